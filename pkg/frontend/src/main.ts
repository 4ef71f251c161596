// Page wiring: form handling, query submission (one in flight at a time),
// rating clicks through the FIFO queue, and the client-side session history.

import { ApiError, configure, fetchDomains, postQuery } from './api';
import { RatingQueue, SessionState } from './state';
import {
  clearBanner,
  markRating,
  renderDomainOptions,
  renderError,
  renderHistory,
  renderResults,
  renderSuggestions,
} from './render';
import type { RatingLabel } from './types';

interface Page {
  home: HTMLSelectElement;
  target: HTMLSelectElement;
  term: HTMLInputElement;
  pipeline: HTMLSelectElement;
  submit: HTMLButtonElement;
  banner: HTMLElement;
  results: HTMLElement;
  history: HTMLElement;
}

function page(): Page {
  const get = <T extends HTMLElement>(id: string): T => {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
  };
  return {
    home: get<HTMLSelectElement>('home'),
    target: get<HTMLSelectElement>('target'),
    term: get<HTMLInputElement>('term'),
    pipeline: get<HTMLSelectElement>('pipeline'),
    submit: get<HTMLButtonElement>('submit'),
    banner: get<HTMLElement>('banner'),
    results: get<HTMLElement>('results'),
    history: get<HTMLElement>('history'),
  };
}

export function validateForm(p: Page): string | null {
  if (!p.term.value.trim()) return 'enter a term';
  if (p.home.value === p.target.value) return 'home and target must differ';
  return null;
}

function refreshSubmit(p: Page, state: SessionState): void {
  const problem = validateForm(p);
  p.submit.disabled = problem !== null || state.queryInFlight;
  p.submit.title = problem ?? '';
  const inline = document.getElementById('form-validation');
  if (inline) inline.textContent = p.term.value.trim() && problem ? problem : '';
}

async function submitQuery(p: Page, state: SessionState, queue: RatingQueue): Promise<void> {
  if (state.queryInFlight || validateForm(p) !== null) return;
  state.queryInFlight = true;
  refreshSubmit(p, state);
  clearBanner(p.banner);
  try {
    // the term goes to the server untouched: phrase-merge normalization is
    // the server's job
    const response = await postQuery(p.home.value, p.target.value, p.term.value, p.pipeline.value);
    state.recordQuery(response);
    renderResults(p.results, response, {
      onRate: (term, label) => rate(p, state, queue, term, label),
      onRequery: (term) => {
        p.term.value = term;
        refreshSubmit(p, state);
        p.term.focus();
      },
    });
    renderHistory(p.history, state.history);
  } catch (err) {
    if (err instanceof ApiError && err.body.code === 'OOV_TERM') {
      renderSuggestions(p.banner, err.body.message, err.body.suggestions ?? [], (term) => {
        p.term.value = term;
        refreshSubmit(p, state);
        void submitQuery(p, state, queue);
      });
    } else if (err instanceof ApiError) {
      renderError(p.banner, `${err.body.code}: ${err.body.message}`);
    } else {
      renderError(p.banner, 'service unreachable', () => void submitQuery(p, state, queue));
    }
  } finally {
    state.queryInFlight = false;
    refreshSubmit(p, state);
  }
}

function rate(p: Page, state: SessionState, queue: RatingQueue, term: string, label: RatingLabel): void {
  markRating(p.results, term, label, 'pending'); // optimistic check mark
  void queue.enqueue(state, term, label, (t, outcome) => {
    markRating(p.results, t, outcome === 'failed' ? null : label, outcome);
    if (outcome === 'failed') {
      renderError(p.banner, `rating for "${t}" was not saved`);
    }
  });
}

export async function boot(apiBase = ''): Promise<{ state: SessionState; queue: RatingQueue }> {
  configure(apiBase);
  const p = page();
  const state = new SessionState();
  const queue = new RatingQueue();

  try {
    const domains = await fetchDomains();
    renderDomainOptions(p.home, domains);
    renderDomainOptions(p.target, domains);
    if (domains.length > 1) p.target.selectedIndex = 1;
    clearBanner(p.banner);
  } catch {
    renderError(p.banner, 'service unreachable', () => void boot(apiBase));
    return { state, queue };
  }

  p.term.addEventListener('input', () => refreshSubmit(p, state));
  p.home.addEventListener('change', () => refreshSubmit(p, state));
  p.target.addEventListener('change', () => refreshSubmit(p, state));
  p.submit.addEventListener('click', (e) => {
    e.preventDefault();
    void submitQuery(p, state, queue);
  });
  refreshSubmit(p, state);
  return { state, queue };
}

declare global {
  interface Window {
    CROSSLEX_API_BASE?: string;
  }
}
