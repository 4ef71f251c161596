// DOM builders. Results render exactly in server order; this module never
// sorts or filters hits.

import type { ContextSentence, DomainInfo, QueryResponse, RatingLabel } from './types';
import type { RatingOutcome } from './state';

const RATING_LABELS: { label: RatingLabel; caption: string }[] = [
  { label: 'sensible', caption: 'sensible' },
  { label: 'sensible_new', caption: 'sensible + new' },
  { label: 'neither', caption: 'neither' },
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderDomainOptions(select: HTMLSelectElement, domains: DomainInfo[]): void {
  select.innerHTML = '';
  for (const d of domains) {
    const opt = el('option');
    opt.value = d.id;
    opt.textContent = d.id;
    select.appendChild(opt);
  }
}

export function renderContext(ctx: ContextSentence): HTMLElement {
  const row = el('div', 'context');
  const sentence = el('span', 'sentence');
  if (ctx.highlight) {
    const [lo, hi] = ctx.highlight;
    sentence.appendChild(document.createTextNode(ctx.text.slice(0, lo)));
    const mark = el('mark', 'hit-term', ctx.text.slice(lo, hi));
    sentence.appendChild(mark);
    sentence.appendChild(document.createTextNode(ctx.text.slice(hi)));
  } else {
    sentence.textContent = ctx.text;
  }
  row.appendChild(sentence);
  if (ctx.url) {
    const link = el('a', 'paper-link', ctx.paper_id);
    link.setAttribute('href', ctx.url);
    link.setAttribute('target', '_blank');
    link.setAttribute('rel', 'noopener');
    row.appendChild(link);
  } else {
    row.appendChild(el('span', 'paper-id', ctx.paper_id));
  }
  return row;
}

export interface ResultHandlers {
  onRate(term: string, label: RatingLabel): void;
  onRequery(term: string): void;
}

export function renderResults(
  container: HTMLElement,
  response: QueryResponse,
  handlers: ResultHandlers,
): void {
  container.innerHTML = '';
  const list = el('ol', 'hits');
  for (const hit of response.hits) {
    const item = el('li', 'hit');
    item.dataset.term = hit.term;

    const head = el('details', 'hit-head') as HTMLDetailsElement;
    const summary = el('summary');
    summary.appendChild(el('span', 'rank', String(hit.rank)));
    summary.appendChild(el('span', 'term', hit.term));
    summary.appendChild(
      el('span', 'score', hit.score === null ? '' : hit.score.toFixed(4)),
    );
    summary.appendChild(el('span', 'n-contexts', `${hit.contexts.length} contexts`));
    head.appendChild(summary);

    const body = el('div', 'hit-body');
    for (const ctx of hit.contexts) {
      body.appendChild(renderContext(ctx));
    }

    const actions = el('div', 'actions');
    for (const { label, caption } of RATING_LABELS) {
      const btn = el('button', `rate rate-${label}`, caption);
      btn.dataset.term = hit.term;
      btn.dataset.label = label;
      btn.addEventListener('click', () => handlers.onRate(hit.term, label));
      actions.appendChild(btn);
    }
    const requery = el('button', 'requery', 'query this term in another pair');
    requery.addEventListener('click', () => handlers.onRequery(hit.term));
    actions.appendChild(requery);
    body.appendChild(actions);

    head.appendChild(body);
    item.appendChild(head);
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function markRating(
  container: HTMLElement,
  term: string,
  label: RatingLabel | null,
  outcome: RatingOutcome | null,
): void {
  // dataset comparison instead of an attribute selector: terms may contain
  // characters that need CSS escaping, which jsdom lacks
  const item = [...container.querySelectorAll<HTMLElement>('li.hit')].find(
    (node) => node.dataset.term === term,
  );
  if (!item) return;
  for (const btn of item.querySelectorAll<HTMLButtonElement>('button.rate')) {
    const selected = label !== null && btn.dataset.label === label;
    btn.classList.toggle('selected', selected);
    btn.classList.toggle('saved', selected && outcome === 'saved');
    const check = selected && outcome !== null && outcome !== 'failed';
    btn.textContent = (check ? '✓ ' : '') + (btn.dataset.label === 'sensible_new'
      ? 'sensible + new'
      : btn.dataset.label === 'sensible'
        ? 'sensible'
        : 'neither');
  }
}

export function renderError(banner: HTMLElement, message: string, retry?: () => void): void {
  banner.innerHTML = '';
  banner.appendChild(el('span', 'error-text', message));
  if (retry) {
    const btn = el('button', 'retry', 'retry');
    btn.addEventListener('click', retry);
    banner.appendChild(btn);
  }
  banner.hidden = false;
}

export function renderSuggestions(
  banner: HTMLElement,
  message: string,
  suggestions: string[],
  pick: (term: string) => void,
): void {
  banner.innerHTML = '';
  banner.appendChild(el('span', 'error-text', message));
  for (const s of suggestions) {
    const btn = el('button', 'suggestion', s);
    btn.addEventListener('click', () => pick(s));
    banner.appendChild(btn);
  }
  banner.hidden = false;
}

export function clearBanner(banner: HTMLElement): void {
  banner.innerHTML = '';
  banner.hidden = true;
}

export function renderHistory(container: HTMLElement, entries: { term: string; home: string; target: string }[]): void {
  container.innerHTML = '';
  for (const entry of entries) {
    container.appendChild(el('li', 'history-entry', `${entry.home}[${entry.term}] → ${entry.target}`));
  }
}
