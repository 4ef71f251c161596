// Thin typed client over the service API. Configuration is just the base
// URL; same-origin by default.

import type { ApiErrorBody, DomainInfo, QueryResponse, RatingPost } from './types';

let apiBase = '';

export function configure(base: string): void {
  apiBase = base.replace(/\/$/, '');
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ApiErrorBody,
  ) {
    super(body.message);
  }
}

async function parseError(r: Response): Promise<never> {
  let body: ApiErrorBody = { code: 'UNKNOWN', message: `HTTP ${r.status}` };
  try {
    const data = await r.json();
    if (data && data.error) body = data.error;
  } catch {
    // non-JSON error body; keep the fallback
  }
  throw new ApiError(r.status, body);
}

export async function fetchDomains(): Promise<DomainInfo[]> {
  const r = await fetch(`${apiBase}/api/domains`);
  if (!r.ok) return parseError(r);
  const data = await r.json();
  return data.domains;
}

export async function postQuery(
  home: string,
  target: string,
  term: string,
  pipeline: string,
): Promise<QueryResponse> {
  const r = await fetch(`${apiBase}/api/query`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify({ home, target, term, pipeline }),
  });
  if (!r.ok) return parseError(r);
  return r.json();
}

export async function postRating(rating: RatingPost): Promise<{ id: string }> {
  const r = await fetch(`${apiBase}/api/ratings`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(rating),
  });
  if (!r.ok) return parseError(r);
  return r.json();
}
