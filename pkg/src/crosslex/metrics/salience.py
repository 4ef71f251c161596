"""Salient-term cosine similarity under an alignment.

Each topical source term is scored by its best-match cosine in the target
space; scores are normalized by the vocabulary-wide mean best-match cosine
(so a uniformly loose alignment does not masquerade as a tight one), and the
mean normalized score summarizes the pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..align.mapping import AlignmentMap
from ..align.normalize import normalize_matrix
from ..errors import CrosslexError


@dataclass
class SalienceEntry:
    term: str
    best_target_term: str
    raw_cosine: float
    normalized_cosine: float


@dataclass
class SalienceReport:
    entries: list[SalienceEntry]
    mean_normalized: float
    normalizer: float
    dropped_terms: int
    salience_rule: str = "max-topic probability x distinctiveness"

    def to_json(self) -> dict:
        return {
            "entries": [dict(e.__dict__) for e in self.entries],
            "mean_normalized": self.mean_normalized,
            "normalizer": self.normalizer,
            "dropped_terms": self.dropped_terms,
            "salience_rule": self.salience_rule,
        }


def best_match_cosines(
    alignment: AlignmentMap, source_space, target_space
) -> tuple[np.ndarray, np.ndarray]:
    """Per source row: (best cosine against all target rows, argmax index)."""
    xs = normalize_matrix(source_space.matrix, alignment.recipe)
    xt = normalize_matrix(target_space.matrix, alignment.recipe)
    mapped = alignment.apply(xs)
    mapped /= np.linalg.norm(mapped, axis=1, keepdims=True)
    xt /= np.linalg.norm(xt, axis=1, keepdims=True)
    best = np.empty(mapped.shape[0])
    best_idx = np.empty(mapped.shape[0], dtype=np.int64)
    step = 1024  # keep the similarity block small
    for lo in range(0, mapped.shape[0], step):
        block = mapped[lo : lo + step] @ xt.T
        best_idx[lo : lo + step] = np.argmax(block, axis=1)
        best[lo : lo + step] = block[np.arange(block.shape[0]), best_idx[lo : lo + step]]
    return best, best_idx


def salient_cosine(
    alignment: AlignmentMap, source_space, target_space, terms: list[str]
) -> SalienceReport:
    """Salient terms missing from the source vocabulary are dropped and
    counted; an empty list after drops is an error."""
    best, best_idx = best_match_cosines(alignment, source_space, target_space)
    normalizer = float(best.mean())

    entries: list[SalienceEntry] = []
    dropped = 0
    for term in terms:
        idx = source_space.vocab.index.get(term)
        if idx is None:
            dropped += 1
            continue
        raw = float(best[idx])
        entries.append(
            SalienceEntry(
                term=term,
                best_target_term=target_space.vocab.tokens[int(best_idx[idx])],
                raw_cosine=raw,
                normalized_cosine=raw / normalizer,
            )
        )
    if not entries:
        raise CrosslexError("no salient terms remain after vocabulary drops")
    return SalienceReport(
        entries=entries,
        mean_normalized=float(np.mean([e.normalized_cosine for e in entries])),
        normalizer=normalizer,
        dropped_terms=dropped,
    )
