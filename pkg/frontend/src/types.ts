// Shapes mirrored from the service's JSON API (schema_version 1).

export interface DomainInfo {
  id: string;
  stats: Record<string, number>;
}

export interface ContextSentence {
  paper_id: string;
  text: string;
  url: string | null;
  highlight: [number, number] | null;
}

export interface TermHit {
  term: string;
  score: number | null;
  rank: number;
  contexts: ContextSentence[];
}

export interface QueryResponse {
  schema_version: number;
  query: {
    home: string;
    target: string;
    term: string;
    pipeline: string;
    k: number;
    align_method: string;
  };
  hits: TermHit[];
}

export type RatingLabel = 'sensible' | 'sensible_new' | 'neither';

export interface RatingPost {
  home: string;
  query: string;
  target: string;
  response_term: string;
  scheme: 'cs2';
  values: { label: RatingLabel };
  rater_id: string;
  pipeline: string;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  suggestions?: string[];
  remedy?: string;
}
