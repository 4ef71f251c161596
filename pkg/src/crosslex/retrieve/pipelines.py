"""Query pipelines.

Four kinds share one result shape (ranked terms, each with capped context
sentences):

* ``aligned``           expand through the home->target alignment, contexts
                        from the target corpus only
* ``fasttext_target``   expand in the combined-corpus space, contexts from
                        the target corpus; extends past the top-K expansion
                        (11th, 12th, ... terms) until the pair budget is met
                        or candidates are exhausted
* ``fasttext_combined`` same expansion, contexts searched over the combined
                        corpus of all communities
* ``llm_select``        constrained vocabulary selection via a completion
                        client, contexts from the target corpus
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .. import layout
from ..align.mapping import AlignmentMap, map_term
from ..corpus.phrases import JOINER, apply_phrase_table
from ..corpus.store import load_corpus, load_vocabulary
from ..corpus.text import tokenize
from ..embed.space import load_space, nearest_neighbors
from ..errors import MissingArtifactError, OOVTermError
from .contexts import ContextSentence, fetch_contexts
from .index import InvertedIndex
from .llm import CompletionClient, llm_select

PIPELINE_KINDS = ("aligned", "fasttext_target", "fasttext_combined", "llm_select")


@dataclass
class Query:
    home_domain: str
    target_domain: str
    term: str
    kind: str = "aligned"
    expansion_k: int = 10
    max_contexts_per_term: int = 5
    max_per_paper: int = 2
    total_pairs_target: int = 50
    align_method: str = "self_learn"

    def validate(self) -> None:
        if self.home_domain == self.target_domain:
            raise ValueError("home and target domains must be distinct")
        if self.kind not in PIPELINE_KINDS:
            raise ValueError(f"unknown pipeline kind {self.kind!r}; expected one of {PIPELINE_KINDS}")
        for name in ("expansion_k", "max_contexts_per_term", "max_per_paper", "total_pairs_target"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class TermHit:
    term: str
    score: float | None
    rank: int
    contexts: list[ContextSentence] = field(default_factory=list)


def edit_distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def nearest_terms(term: str, vocabulary, n_best: int = 3) -> list[str]:
    scored = sorted(
        ((edit_distance(term, tok), i, tok) for i, tok in enumerate(vocabulary.tokens)),
    )
    return [tok for _, _, tok in scored[:n_best]]


def normalize_query_term(term: str, phrase_passes) -> str:
    """Run user input through the tokenizer and the corpus's recorded phrase
    merges, so "third space" matches the merged vocabulary entry."""
    tokens = tokenize(term)
    if not tokens:
        return ""
    tokens = apply_phrase_table(tokens, phrase_passes or [])
    return tokens[0] if len(tokens) == 1 else JOINER.join(tokens)


def _require(path: Path, what: str, remedy: str) -> Path:
    if not path.exists():
        raise MissingArtifactError(f"{what} not found at {path}", remedy=remedy)
    return path


def _load_phrase_passes(ws: Path, domain: str):
    manifest = _require(
        layout.corpus_path(ws, domain) / "manifest.json",
        f"corpus manifest for {domain!r}",
        f"crosslex ingest --domain {domain}",
    )
    return [
        [tuple(p) for p in merged]
        for merged in json.loads(manifest.read_text()).get("phrase_passes", [])
    ]


def _load_space(ws: Path, name: str):
    path = _require(
        layout.space_path(ws, name) / "vectors.txt",
        f"embedding space {name!r}",
        "crosslex train",
    )
    return load_space(path)


def _load_search_corpus(ws: Path, domain: str):
    _require(
        layout.corpus_path(ws, domain) / "sentences.jsonl",
        f"corpus for {domain!r}",
        f"crosslex ingest --domain {domain}",
    )
    corpus = load_corpus(ws, domain)
    idx_path = layout.index_path(ws, domain)
    if idx_path.exists():
        index = InvertedIndex.load(idx_path)
    else:
        index = InvertedIndex.build(corpus)
    return corpus, index


def expand_terms(query: Query, workspace: str | Path, client: CompletionClient | None = None):
    """Ranked expansion candidates for a query (no contexts attached).

    Raises OOVTermError with up to three edit-distance suggestions when the
    normalized term is missing from the expansion vocabulary.
    """
    candidates, _, _ = _expansion(Path(workspace), query, client)
    return candidates[: query.expansion_k]


def _expansion(ws: Path, query: Query, client: CompletionClient | None):
    """Returns (ranked candidates, search corpus, search index)."""
    query.validate()
    term = normalize_query_term(query.term, _load_phrase_passes(ws, query.home_domain))

    if query.kind == "aligned":
        home_space = _load_space(ws, query.home_domain)
        target_space = _load_space(ws, query.target_domain)
        align_dir = _require(
            layout.alignment_path(ws, query.home_domain, query.target_domain, query.align_method),
            f"alignment {query.home_domain}->{query.target_domain} ({query.align_method})",
            "crosslex align",
        )
        alignment = AlignmentMap.load(align_dir)
        if term not in home_space.vocab:
            raise OOVTermError(term, nearest_terms(term, home_space.vocab))
        candidates = map_term(alignment, home_space, target_space, term, n_best=query.expansion_k)
        corpus, index = _load_search_corpus(ws, query.target_domain)
        return candidates, corpus, index

    if query.kind in ("fasttext_target", "fasttext_combined"):
        combined = _load_space(ws, layout.COMBINED)
        if term not in combined.vocab:
            raise OOVTermError(term, nearest_terms(term, combined.vocab))
        ranked = nearest_neighbors(combined, combined.vector(term), len(combined.vocab), exclude={term})
        if query.kind == "fasttext_target":
            search_vocab = load_vocabulary(ws, query.target_domain)
            ranked = [(tok, score) for tok, score in ranked if tok in search_vocab]
            corpus, index = _load_search_corpus(ws, query.target_domain)
        else:
            corpus, index = _load_search_corpus(ws, layout.COMBINED)
        return ranked, corpus, index

    # llm_select
    if client is None:
        raise MissingArtifactError("llm_select needs a completion client", remedy="configure the LLM endpoint")
    target_vocab = load_vocabulary(ws, query.target_domain)
    selection = llm_select(query, target_vocab, client)
    corpus, index = _load_search_corpus(ws, query.target_domain)
    candidates = [(tok, None) for tok in selection.terms]
    return candidates, corpus, index


def run_pipeline(
    query: Query, workspace: str | Path, client: CompletionClient | None = None
) -> list[TermHit]:
    """Execute a query end to end; the flattened (term, context) pair count
    never exceeds the query's pair budget."""
    ws = Path(workspace)
    candidates, corpus, index = _expansion(ws, query, client)

    hits: list[TermHit] = []
    remaining = query.total_pairs_target
    for position, (term, score) in enumerate(candidates):
        if remaining <= 0:
            break
        within_expansion = position < query.expansion_k
        if not within_expansion and query.kind not in ("fasttext_target", "fasttext_combined"):
            break
        contexts = fetch_contexts(
            term,
            corpus,
            index,
            max_total=min(query.max_contexts_per_term, remaining),
            max_per_paper=query.max_per_paper,
        )
        if not contexts and not within_expansion:
            continue
        hits.append(TermHit(term=term, score=score, rank=len(hits) + 1, contexts=contexts))
        remaining -= len(contexts)
    return hits


def flatten_pairs(hits: list[TermHit]) -> list[tuple[str, ContextSentence]]:
    return [(hit.term, ctx) for hit in hits for ctx in hit.contexts]
