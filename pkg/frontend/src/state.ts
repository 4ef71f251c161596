// Client-side session state. The service stays stateless; history and
// rating selections live only in this page.

import { postRating } from './api';
import type { QueryResponse, RatingLabel, RatingPost } from './types';

export interface HistoryEntry {
  home: string;
  target: string;
  term: string;
  pipeline: string;
}

export type RatingOutcome = 'pending' | 'saved' | 'failed';

export class SessionState {
  home = '';
  target = '';
  term = '';
  pipeline = 'aligned';
  raterId = 'ui';
  result: QueryResponse | null = null;
  // keyed by response term; ratings always reference hits in the current result
  ratings = new Map<string, { label: RatingLabel; outcome: RatingOutcome }>();
  readonly history: HistoryEntry[] = [];
  queryInFlight = false;

  recordQuery(response: QueryResponse): void {
    this.result = response;
    this.ratings = new Map();
    this.history.push({
      home: response.query.home,
      target: response.query.target,
      term: response.query.term,
      pipeline: response.query.pipeline,
    });
  }

  hitTerms(): string[] {
    return this.result ? this.result.hits.map((h) => h.term) : [];
  }
}

// Rating posts go out strictly one at a time, in click order; the optimistic
// mark is rolled back if the post ultimately fails.
export class RatingQueue {
  private chain: Promise<void> = Promise.resolve();
  readonly sent: string[] = [];

  enqueue(
    state: SessionState,
    term: string,
    label: RatingLabel,
    onSettled: (term: string, outcome: RatingOutcome) => void,
  ): Promise<void> {
    if (!state.result || !state.hitTerms().includes(term)) {
      return this.chain; // ratings must reference hits in the current result
    }
    state.ratings.set(term, { label, outcome: 'pending' });
    const post: RatingPost = {
      home: state.result.query.home,
      query: state.result.query.term,
      target: state.result.query.target,
      response_term: term,
      scheme: 'cs2',
      values: { label },
      rater_id: state.raterId,
      pipeline: state.result.query.pipeline,
    };
    this.chain = this.chain.then(async () => {
      try {
        const { id } = await postRating(post);
        this.sent.push(id);
        const current = state.ratings.get(term);
        if (current && current.label === label) {
          state.ratings.set(term, { label, outcome: 'saved' });
          onSettled(term, 'saved');
        }
      } catch {
        const current = state.ratings.get(term);
        if (current && current.label === label) {
          state.ratings.delete(term); // roll the optimistic mark back
          onSettled(term, 'failed');
        }
      }
    });
    return this.chain;
  }
}
