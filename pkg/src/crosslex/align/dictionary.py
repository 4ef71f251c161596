"""Seed dictionaries: (source index, target index) pairs feeding Procrustes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import AlignmentError


@dataclass
class SeedDictionary:
    pairs: list[tuple[int, int]]
    origin: str  # identical_tokens | induced | user_file

    def __len__(self) -> int:
        return len(self.pairs)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        arr = np.asarray(self.pairs, dtype=np.int64)
        return arr[:, 0], arr[:, 1]

    def validate(self, n_source: int, n_target: int) -> None:
        for s, t in self.pairs:
            if not (0 <= s < n_source and 0 <= t < n_target):
                raise AlignmentError(f"pair ({s}, {t}) outside vocabularies ({n_source}, {n_target})")


def seed_identical(source_vocab, target_vocab, max_pairs: int | None = None) -> SeedDictionary:
    """Pair tokens spelled identically in both vocabularies, ordered by the
    better of their two frequency ranks, truncated to ``max_pairs``.

    Scholarly domains share English function words and much technical
    vocabulary, so this replaces a bilingual seed lexicon. Zero overlap is an
    error; callers should fall back to unsupervised initialization.
    """
    if not len(source_vocab) or not len(target_vocab):
        raise AlignmentError("empty vocabulary")
    shared = set(source_vocab.index) & set(target_vocab.index)
    if not shared:
        raise AlignmentError("no tokens shared between the two vocabularies")
    ranked = sorted(
        shared,
        key=lambda tok: (min(source_vocab.index[tok], target_vocab.index[tok]), tok),
    )
    if max_pairs is not None:
        ranked = ranked[:max_pairs]
    pairs = [(source_vocab.index[tok], target_vocab.index[tok]) for tok in ranked]
    return SeedDictionary(pairs=pairs, origin="identical_tokens")
