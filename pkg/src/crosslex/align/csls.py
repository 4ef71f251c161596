"""Hubness-corrected similarity for cross-space retrieval and the
dictionary-induction step of self-learning.

CSLS(x, y) = 2 cos(x, y) - r_T(x) - r_S(y), where r_T(x) is the mean cosine
of x to its csls_k nearest target rows and r_S(y) the mean cosine of y to its
csls_k nearest mapped-source rows. Hub rows (high average similarity to
everything) are penalized relative to raw cosine.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dictionary import SeedDictionary


@dataclass
class SelfLearnConfig:
    csls_k: int = 10
    vocab_cutoff: int = 8000
    keep_start: float = 0.1
    anneal: float = 2.0
    stall_tolerance: float = 1e-6
    max_iterations: int = 200
    bidirectional: bool = True
    seed: int = 0

    def validate(self) -> None:
        if not (0.0 < self.keep_start <= 1.0):
            raise ValueError("keep_start must be in (0, 1]")
        if self.csls_k < 1:
            raise ValueError("csls_k must be >= 1")
        if self.anneal <= 1.0:
            raise ValueError("anneal must be > 1")

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _topk_mean(sim: np.ndarray, k: int) -> np.ndarray:
    """Row-wise mean of the k largest entries. k is clamped to the number of
    candidates minus one (never below one)."""
    n = sim.shape[1]
    k = max(1, min(k, n - 1))
    if k >= n:
        return sim.mean(axis=1)
    part = np.partition(sim, n - k, axis=1)[:, n - k :]
    return part.mean(axis=1)


def csls_scores(mapped_source: np.ndarray, target: np.ndarray, k: int = 10) -> np.ndarray:
    """Full CSLS score matrix (rows: mapped source, cols: target). Inputs
    must be unit-normalized row-wise."""
    sim = mapped_source @ target.T
    r_t = _topk_mean(sim, k)          # per source row, its target neighborhood
    r_s = _topk_mean(sim.T, k)        # per target row, its source neighborhood
    return 2.0 * sim - r_t[:, None] - r_s[None, :]


def induce_dictionary(
    mapped_source: np.ndarray,
    target: np.ndarray,
    config: SelfLearnConfig,
    keep_probability: float = 1.0,
    rng: np.random.Generator | None = None,
) -> tuple[SeedDictionary, float]:
    """One induction round: each row's CSLS-argmax counterpart, forward and
    (when configured) backward, as a deduplicated pair set; each pair is then
    retained with ``keep_probability``.

    Returns the dictionary and the objective of the induced dictionary: the
    mean cosine of the selected pairs before dropout (selection itself is
    CSLS-ranked, so hubs do not attract matches, but the objective stays on
    the cosine scale where identical spaces score exactly 1).
    """
    scores = csls_scores(mapped_source, target, config.csls_k)
    sim = mapped_source @ target.T
    fwd = np.argmax(scores, axis=1)
    chosen = [(int(i), int(j)) for i, j in enumerate(fwd)]
    values = [sim[i, j] for i, j in chosen]
    if config.bidirectional:
        bwd = np.argmax(scores, axis=0)
        for j, i in enumerate(bwd):
            chosen.append((int(i), int(j)))
            values.append(sim[i, j])
    objective = float(np.mean(values))

    pairs = sorted(set(chosen))
    if keep_probability < 1.0:
        if rng is None:
            rng = np.random.default_rng(config.seed)
        mask = rng.random(len(pairs)) < keep_probability
        kept = [p for p, m in zip(pairs, mask) if m]
        if kept:  # never hand Procrustes an empty dictionary
            pairs = kept
    return SeedDictionary(pairs=pairs, origin="induced"), objective


def mutual_nn_pairs(mapped_source: np.ndarray, target: np.ndarray, k: int = 10) -> SeedDictionary:
    """CSLS mutual-nearest-neighbor pairs: (i, j) kept only when j is i's
    best target and i is j's best source."""
    scores = csls_scores(mapped_source, target, k)
    fwd = np.argmax(scores, axis=1)
    bwd = np.argmax(scores, axis=0)
    pairs = [(int(i), int(j)) for i, j in enumerate(fwd) if int(bwd[j]) == int(i)]
    return SeedDictionary(pairs=pairs, origin="induced")
