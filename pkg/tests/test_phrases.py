from __future__ import annotations

from conftest import make_corpus
from crosslex.corpus import build_vocabulary, merge_phrases
from crosslex.corpus.phrases import apply_phrase_table
from oracles import adjacent_pair_count


FILLER = "alpha bravo charlie delta echo foxtrot golf hotel india juliet".split()


def corpus_of(sentence: str, repeats: int, extra: list[str] = ()):
    """Repeat a phrase inside varied context words so only the planted
    phrase co-occurs often enough to merge."""
    parts = [f"{FILLER[i % 10]} {sentence} {FILLER[(i + 3) % 10]}." for i in range(repeats)]
    bodies = [" ".join(p.capitalize() for p in parts)] + list(extra)
    return make_corpus(bodies)


def test_frequent_pair_merges():
    # "third space" adjacent 50x, components rare elsewhere
    corpus = corpus_of("third space", 50, extra=["Space is big. A third one."])
    raw_tokens = [list(s.tokens) for s in corpus.sentences]
    assert adjacent_pair_count(raw_tokens, "third", "space") == 50
    merge_phrases(corpus, min_pair_count=5, score_threshold=1e-4, passes=2)
    vocab = build_vocabulary(corpus, min_count=1)
    assert "third__space" in vocab


def test_pair_below_min_count_never_merges():
    corpus = corpus_of("third space", 4)  # 4 < min_pair_count
    merge_phrases(corpus, min_pair_count=5, score_threshold=0.0, passes=2)
    assert "third__space" not in build_vocabulary(corpus, min_count=1)


def test_score_threshold_blocks_common_pairs():
    # pair count high but components ubiquitous -> score below threshold
    corpus = corpus_of("of the", 100)
    # score = (100 - 5) / (100 * 100) = 9.5e-3; block with a higher threshold
    merge_phrases(corpus, min_pair_count=5, score_threshold=0.05, passes=1)
    assert "of__the" not in build_vocabulary(corpus, min_count=1)


def test_second_pass_builds_three_word_terms():
    corpus = corpus_of("funds of knowledge", 40, extra=["Knowledge is rare. The funds exist."])
    merge_phrases(corpus, min_pair_count=5, score_threshold=1e-4, passes=2)
    vocab = build_vocabulary(corpus, min_count=1)
    assert "funds__of__knowledge" in vocab


def test_single_pass_stops_at_bigrams():
    corpus = corpus_of("funds of knowledge", 40)
    merge_phrases(corpus, min_pair_count=5, score_threshold=1e-4, passes=1)
    vocab = build_vocabulary(corpus, min_count=1)
    assert "funds__of__knowledge" not in vocab


def test_merges_are_vocabulary_conservative():
    """Every merged token's components really were adjacent at least
    min_pair_count times in the pre-merge stream (brute recount)."""
    corpus = make_corpus(
        [
            ("working memory load. " * 12) + ("the working day. " * 3),
            ("memory works. " * 5) + ("working memory again. " * 8),
        ]
    )
    before = [list(s.tokens) for s in corpus.sentences]
    merge_phrases(corpus, min_pair_count=5, score_threshold=1e-4, passes=2)
    merged_pass_one = corpus.phrase_passes[0]
    for a, b in merged_pass_one:
        assert adjacent_pair_count(before, a, b) >= 5


def test_apply_phrase_table_matches_corpus_merge():
    corpus = corpus_of("third space theory", 30)
    merge_phrases(corpus, min_pair_count=5, score_threshold=1e-4, passes=2)
    toks = apply_phrase_table(["a", "third", "space", "here"], corpus.phrase_passes)
    assert "third__space" in toks


def test_merge_is_deterministic():
    corpus_a = corpus_of("third space theory", 30)
    corpus_b = corpus_of("third space theory", 30)
    merge_phrases(corpus_a)
    merge_phrases(corpus_b)
    assert corpus_a.phrase_passes == corpus_b.phrase_passes
    assert [s.tokens for s in corpus_a.sentences] == [s.tokens for s in corpus_b.sentences]
