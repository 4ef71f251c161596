import { beforeEach, describe, expect, it, vi } from 'vitest';
import { readFileSync } from 'node:fs';
import { join, dirname } from 'node:path';
import { fileURLToPath } from 'node:url';

import { boot } from '../src/main';
import type { QueryResponse, RatingPost } from '../src/types';

const FIXTURE: QueryResponse = JSON.parse(
  readFileSync(join(dirname(fileURLToPath(import.meta.url)), 'fixtures', 'query_response.json'), 'utf-8'),
);

const PAGE = `
  <div id="banner" hidden></div>
  <form id="query-form">
    <select id="home"></select>
    <select id="target"></select>
    <input id="term" type="text" />
    <select id="pipeline"><option value="aligned" selected>aligned</option></select>
    <button id="submit" type="submit" disabled>search</button>
    <span id="form-validation"></span>
  </form>
  <main id="results"></main>
  <ul id="history"></ul>
`;

/** In-memory stand-in for the HTTP service: same routes, same shapes. */
class FakeService {
  domains = [{ id: 'cogsci', stats: { papers: 200 } }, { id: 'orgsci', stats: { papers: 200 } }];
  queryResponse: QueryResponse | { error: object; status: number } = FIXTURE;
  ratings: (RatingPost & { id: string })[] = [];
  failRatings = false;
  failAll = false;
  postedBodies: RatingPost[] = [];

  fetch = vi.fn(async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = String(input);
    if (this.failAll) throw new TypeError('network down');
    if (url.endsWith('/api/domains')) {
      return json(200, { domains: this.domains });
    }
    if (url.endsWith('/api/query')) {
      const q = this.queryResponse as { status?: number; error?: object };
      if (q.status && q.error) return json(q.status, { error: q.error });
      return json(200, this.queryResponse);
    }
    if (url.endsWith('/api/ratings')) {
      const body = JSON.parse(String(init?.body)) as RatingPost;
      this.postedBodies.push(body);
      if (this.failRatings) return json(500, { error: { code: 'BOOM', message: 'nope' } });
      const id = `r${this.ratings.length.toString().padStart(6, '0')}`;
      this.ratings.push({ ...body, id });
      return json(201, { id });
    }
    throw new Error(`unrouted: ${url}`);
  });

  /** Mirrors the service export: rows grouped per (home, query, target). */
  export(): { home: string; query: string; target: string; hit_terms: string[] }[] {
    const groups = new Map<string, Set<string>>();
    for (const r of this.ratings) {
      const key = `${r.home}|${r.query}|${r.target}`;
      if (!groups.has(key)) groups.set(key, new Set());
      if (r.values.label === 'sensible' || r.values.label === 'sensible_new') {
        groups.get(key)!.add(r.response_term);
      }
    }
    return [...groups.entries()].map(([key, terms]) => {
      const [home, query, target] = key.split('|');
      return { home, query, target, hit_terms: [...terms].sort() };
    });
  }
}

function _sel(term: string, label: string): string {
  return `li.hit[data-term="${term}"] button.rate-${label}`;
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

async function settle(): Promise<void> {
  // macrotask drains so chained fetch promises fully resolve
  for (let i = 0; i < 4; i++) await new Promise((r) => setTimeout(r, 0));
}

async function bootPage(service: FakeService) {
  document.body.innerHTML = PAGE;
  vi.stubGlobal('fetch', service.fetch);
  const handles = await boot('');
  await settle();
  return handles;
}

async function runQuery(service: FakeService, term = 'working memory') {
  const handles = await bootPage(service);
  const termBox = document.getElementById('term') as HTMLInputElement;
  termBox.value = term;
  termBox.dispatchEvent(new Event('input'));
  (document.getElementById('submit') as HTMLButtonElement).click();
  await settle();
  return handles;
}

beforeEach(() => {
  vi.unstubAllGlobals();
});

describe('query form', () => {
  it('populates both pickers and disables submit until a term is typed', async () => {
    await bootPage(new FakeService());
    const home = document.getElementById('home') as HTMLSelectElement;
    const target = document.getElementById('target') as HTMLSelectElement;
    const submit = document.getElementById('submit') as HTMLButtonElement;
    expect([...home.options].map((o) => o.value)).toEqual(['cogsci', 'orgsci']);
    expect([...target.options].map((o) => o.value)).toEqual(['cogsci', 'orgsci']);
    expect(submit.disabled).toBe(true);

    const term = document.getElementById('term') as HTMLInputElement;
    term.value = 'memory';
    term.dispatchEvent(new Event('input'));
    expect(submit.disabled).toBe(false);
  });

  it('flags home == target inline', async () => {
    await bootPage(new FakeService());
    const target = document.getElementById('target') as HTMLSelectElement;
    const term = document.getElementById('term') as HTMLInputElement;
    term.value = 'memory';
    term.dispatchEvent(new Event('input'));
    target.value = 'cogsci';
    target.dispatchEvent(new Event('change'));
    expect((document.getElementById('submit') as HTMLButtonElement).disabled).toBe(true);
    expect(document.getElementById('form-validation')!.textContent).toContain('differ');
  });

  it('shows a retry banner when the service is unreachable', async () => {
    const service = new FakeService();
    service.failAll = true;
    await bootPage(service);
    const banner = document.getElementById('banner')!;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain('unreachable');
    expect(banner.querySelector('button.retry')).toBeTruthy();
  });

  it('renders OOV suggestions as clickable replacements that re-query', async () => {
    const service = new FakeService();
    service.queryResponse = {
      status: 422,
      error: { code: 'OOV_TERM', message: 'term not in home domain corpus', suggestions: ['memory', 'member'] },
    };
    await runQuery(service, 'memroy');
    const buttons = [...document.querySelectorAll<HTMLButtonElement>('#banner .suggestion')];
    expect(buttons.map((b) => b.textContent)).toEqual(['memory', 'member']);

    service.queryResponse = FIXTURE; // picking a suggestion re-submits
    buttons[0].click();
    await settle();
    expect((document.getElementById('term') as HTMLInputElement).value).toBe('memory');
    expect(document.querySelectorAll('#results li.hit').length).toBe(10);
  });
});

describe('results rendering (golden)', () => {
  it('renders 10 hits in server order with ranks, highlights and links', async () => {
    await runQuery(new FakeService());
    const rows = [...document.querySelectorAll<HTMLElement>('#results li.hit')];
    expect(rows.length).toBe(10);
    expect(rows.map((r) => r.dataset.term)).toEqual(FIXTURE.hits.map((h) => h.term));
    expect(rows.map((r) => r.querySelector('.rank')!.textContent)).toEqual(
      FIXTURE.hits.map((h) => String(h.rank)),
    );

    const firstCtx = FIXTURE.hits[0].contexts[0];
    const mark = rows[0].querySelector('mark.hit-term')!;
    const [lo, hi] = firstCtx.highlight!;
    expect(mark.textContent).toBe(firstCtx.text.slice(lo, hi));

    const links = [...document.querySelectorAll<HTMLAnchorElement>('#results a.paper-link')];
    const expectedUrls = FIXTURE.hits.flatMap((h) => h.contexts.filter((c) => c.url).map((c) => c.url));
    expect(links.length).toBe(expectedUrls.length);
    expect(links.every((a) => a.target === '_blank')).toBe(true);
    expect(links[0].href).toBe(expectedUrls[0]);

    expect(document.getElementById('results')!.innerHTML).toMatchSnapshot();
  });

  it('never reorders or filters the server response', async () => {
    const service = new FakeService();
    const reversed: QueryResponse = {
      ...FIXTURE,
      hits: [...FIXTURE.hits].reverse().map((h, i) => ({ ...h, rank: i + 1 })),
    };
    service.queryResponse = reversed;
    await runQuery(service);
    const rows = [...document.querySelectorAll<HTMLElement>('#results li.hit')];
    expect(rows.map((r) => r.dataset.term)).toEqual(reversed.hits.map((h) => h.term));
  });
});

describe('ratings', () => {
  it('posts cs2 ratings, shows an optimistic check, and lands in the export', async () => {
    const service = new FakeService();
    await runQuery(service);
    const term = FIXTURE.hits[2].term;
    const btn = document.querySelector<HTMLButtonElement>(
      _sel(term, "sensible_new"),
    )!;
    btn.click();
    expect(btn.classList.contains('selected')).toBe(true); // optimistic, pre-settle
    expect(btn.textContent).toContain('✓');
    await settle();

    expect(service.postedBodies.length).toBe(1);
    const posted = service.postedBodies[0];
    expect(posted.scheme).toBe('cs2');
    expect(posted.values.label).toBe('sensible_new');
    expect(posted.response_term).toBe(term);
    expect(posted.query).toBe(FIXTURE.query.term);
    expect(btn.classList.contains('saved')).toBe(true);

    const rows = service.export();
    expect(rows.length).toBe(1);
    expect(rows[0].hit_terms).toContain(term);
  });

  it('rolls the mark back when the post fails', async () => {
    const service = new FakeService();
    service.failRatings = true;
    await runQuery(service);
    const term = FIXTURE.hits[0].term;
    const btn = document.querySelector<HTMLButtonElement>(
      _sel(term, "sensible"),
    )!;
    btn.click();
    expect(btn.classList.contains('selected')).toBe(true);
    await settle();
    expect(btn.classList.contains('selected')).toBe(false);
    expect(btn.textContent).not.toContain('✓');
    expect(document.getElementById('banner')!.textContent).toContain('not saved');
  });

  it('sends rating posts strictly in click order', async () => {
    const service = new FakeService();
    await runQuery(service);
    const terms = [FIXTURE.hits[0].term, FIXTURE.hits[1].term, FIXTURE.hits[2].term];
    for (const t of terms) {
      document
        .querySelector<HTMLButtonElement>(_sel(t, "sensible"))!
        .click();
    }
    await settle();
    expect(service.postedBodies.map((b) => b.response_term)).toEqual(terms);
    expect(service.ratings.map((r) => r.id)).toEqual(['r000000', 'r000001', 'r000002']);
  });
});

describe('session history and steering', () => {
  it('grows history per query and repopulates the form on click-through', async () => {
    const { state } = await runQuery(new FakeService());
    expect(state.history.length).toBe(1);
    expect(document.querySelectorAll('#history .history-entry').length).toBe(1);

    const requery = document.querySelector<HTMLButtonElement>('li.hit .requery')!;
    requery.click();
    const termBox = document.getElementById('term') as HTMLInputElement;
    expect(termBox.value).toBe(FIXTURE.hits[0].term);

    (document.getElementById('submit') as HTMLButtonElement).click();
    await settle();
    expect(state.history.length).toBe(2);
    expect(document.querySelectorAll('#history .history-entry').length).toBe(2);
  });

  it('allows at most one query in flight', async () => {
    const service = new FakeService();
    let release: (() => void) | null = null;
    const original = service.fetch.getMockImplementation()!;
    service.fetch.mockImplementation(async (input, init) => {
      const url = String(input);
      if (url.endsWith('/api/query')) {
        await new Promise<void>((resolve) => (release = resolve));
      }
      return original(input, init);
    });
    await bootPage(service);
    const termBox = document.getElementById('term') as HTMLInputElement;
    termBox.value = 'memory';
    termBox.dispatchEvent(new Event('input'));
    const submit = document.getElementById('submit') as HTMLButtonElement;
    submit.click();
    submit.click();
    submit.click();
    await Promise.resolve();
    const queryCalls = service.fetch.mock.calls.filter(([u]) => String(u).endsWith('/api/query'));
    expect(queryCalls.length).toBe(1);
    release!();
    await settle();
  });
});
