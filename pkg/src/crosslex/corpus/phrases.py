"""Multiword-term detection by adjacent-pair scoring.

Pairs of adjacent tokens scoring above a threshold are joined into a single
token with a double-underscore separator ("third space" -> "third__space").
Running a second pass lets already-merged tokens combine again, producing
three- and four-word terms ("funds__of" + "knowledge" -> "funds__of__knowledge").

score(a, b) = (count(ab) - min_pair_count) / (count(a) * count(b))
"""

from __future__ import annotations

from collections import Counter

JOINER = "__"

# A pass is the set of (left, right) token pairs merged during that pass.
PhraseTable = list[list[tuple[str, str]]]


def _count(sentences) -> tuple[Counter, Counter]:
    unigrams: Counter = Counter()
    pairs: Counter = Counter()
    for sent in sentences:
        toks = sent.tokens
        unigrams.update(toks)
        for a, b in zip(toks, toks[1:]):
            pairs[(a, b)] += 1
    return unigrams, pairs


def _score_pass(sentences, min_pair_count: int, score_threshold: float) -> list[tuple[str, str]]:
    unigrams, pairs = _count(sentences)
    merged = []
    for (a, b), n_ab in pairs.items():
        if n_ab < min_pair_count:
            continue
        score = (n_ab - min_pair_count) / (unigrams[a] * unigrams[b])
        if score > score_threshold:
            merged.append((a, b))
    merged.sort()
    return merged


def _apply_pass(tokens: list[str], merge_set: set[tuple[str, str]]) -> list[str]:
    # Greedy left-to-right, non-overlapping.
    out = []
    i = 0
    n = len(tokens)
    while i < n:
        if i + 1 < n and (tokens[i], tokens[i + 1]) in merge_set:
            out.append(tokens[i] + JOINER + tokens[i + 1])
            i += 2
        else:
            out.append(tokens[i])
            i += 1
    return out


def apply_phrase_table(tokens: list[str], passes: PhraseTable) -> list[str]:
    """Re-apply recorded merge passes to a fresh token list (used to
    normalize user query input the same way the corpus was normalized)."""
    for merged in passes:
        tokens = _apply_pass(tokens, set(merged))
    return tokens


def merge_phrases(corpus, min_pair_count: int = 5, score_threshold: float = 1e-4, passes: int = 2):
    """Merge high-scoring adjacent token pairs in place, ``passes`` times.

    Records the merge table on the corpus so queries can be normalized
    identically later.
    """
    tables: PhraseTable = []
    for _ in range(passes):
        merged = _score_pass(corpus.sentences, min_pair_count, score_threshold)
        tables.append(merged)
        if merged:
            merge_set = set(merged)
            for sent in corpus.sentences:
                sent.tokens = _apply_pass(sent.tokens, merge_set)
    corpus.phrase_passes = tables
    corpus.refresh_stats()
    return corpus
