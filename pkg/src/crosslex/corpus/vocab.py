"""Token vocabularies with frequency-ordered dense indices."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..errors import VocabularyError


@dataclass
class Vocabulary:
    """Bijective token <-> index mapping, indices dense 0..|V|-1 ordered by
    descending frequency with lexicographic tiebreak."""

    tokens: list[str]
    frequencies: list[int]
    min_count: int
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {tok: i for i, tok in enumerate(self.tokens)}
        if len(self.index) != len(self.tokens):
            raise VocabularyError("duplicate tokens in vocabulary")

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def frequency(self, token: str) -> int:
        return self.frequencies[self.index[token]]

    def rank(self, token: str) -> int:
        """Frequency rank == index, by construction."""
        return self.index[token]


def build_vocabulary(corpus, min_count: int = 1) -> Vocabulary:
    """Count tokens over corpus sentences and keep those with frequency >=
    min_count. Empty result is fatal."""
    counts: Counter = Counter()
    for sent in corpus.sentences:
        counts.update(sent.tokens)
    kept = [(tok, n) for tok, n in counts.items() if n >= min_count]
    if not kept:
        raise VocabularyError(
            f"no tokens with frequency >= {min_count} in domain {corpus.domain_id!r}"
        )
    kept.sort(key=lambda item: (-item[1], item[0]))
    return Vocabulary(
        tokens=[tok for tok, _ in kept],
        frequencies=[n for _, n in kept],
        min_count=min_count,
    )
