from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, make_corpus
from crosslex.corpus import (
    DomainCorpus,
    PaperRecord,
    StaticCitationClient,
    build_vocabulary,
    expand_citations,
    ingest_records,
    load_corpus,
    load_vocabulary,
    save_corpus,
    segment_and_tokenize,
)
from crosslex.corpus.text import split_sentences, tokenize
from crosslex.errors import CitationError, IngestError, VocabularyError


def write_jsonl(path, objs):
    path.write_text("".join(json.dumps(o) + "\n" for o in objs))
    return path


def rec(i, **kw):
    base = {"id": f"p{i}", "title": f"Title {i}", "body": "Cats purr. Dogs bark.", "url": None}
    base.update(kw)
    return base


class TestIngest:
    def test_three_distinct_lines(self, tmp_path):
        path = write_jsonl(tmp_path / "r.jsonl", [rec(1), rec(2), rec(3)])
        corpus = ingest_records(path, "d")
        assert corpus.stats.papers == 3
        assert corpus.stats.skipped_lines == 0

    def test_duplicate_id_first_wins(self, tmp_path):
        path = write_jsonl(tmp_path / "r.jsonl", [rec(1, title="first"), rec(2), rec(1, title="second")])
        corpus = ingest_records(path, "d")
        assert corpus.stats.papers == 2
        assert corpus.stats.duplicate_ids == 1
        assert corpus.paper_by_id("p1").title == "first"

    def test_malformed_line_skipped_with_count(self, tmp_path):
        path = tmp_path / "r.jsonl"
        path.write_text(json.dumps(rec(1)) + "\n{not json\n" + json.dumps(rec(2)) + "\n")
        corpus = ingest_records(path, "d")
        assert corpus.stats.papers == 2
        assert corpus.stats.skipped_lines == 1

    def test_unreadable_file_fatal(self, tmp_path):
        with pytest.raises(IngestError):
            ingest_records(tmp_path / "missing.jsonl", "d")

    def test_bundled_fixture_matches_manifest(self):
        manifest = json.loads((FIXTURES / "manifest.json").read_text())
        for domain in ("cogsci", "orgsci"):
            corpus = ingest_records(FIXTURES / f"{domain}.jsonl", domain)
            assert corpus.stats.papers == manifest["domains"][domain]["records_file_lines"]
            seeds = ingest_records(FIXTURES / f"{domain}_seeds.jsonl", domain)
            assert seeds.stats.papers == manifest["domains"][domain]["seed_papers"]

    def test_empty_body_requires_title(self):
        with pytest.raises(ValueError):
            PaperRecord(paper_id="x", title="", body="", domain_tag="d").validate()


class TestSegmentTokenize:
    def test_two_plain_sentences(self):
        corpus = make_corpus(["Cats purr. Dogs bark."])
        assert [s.tokens for s in corpus.sentences] == [["cats", "purr"], ["dogs", "bark"]]

    def test_abbreviation_guard(self):
        # every boundary candidate sits after a guarded abbreviation
        assert split_sentences("e.g. Fig. 2 shows X.") == ["e.g. Fig. 2 shows X."]
        assert len(split_sentences("See Smith et al. Then we proceed.")) == 1

    def test_empty_body_zero_sentences(self):
        corpus = make_corpus([""])
        assert corpus.sentences == []
        assert corpus.stats.sentences == 0

    def test_title_becomes_sentence_zero(self):
        corpus = make_corpus(["Body here."], titles=["A Title"])
        assert corpus.sentences[0].index == 0
        assert corpus.sentences[0].tokens == ["a", "title"]

    def test_hyphenated_tokens_survive(self):
        assert tokenize("Boundary-crossing, and co-creative work!") == [
            "boundary-crossing",
            "and",
            "co-creative",
            "work",
        ]

    @given(st.text(max_size=300))
    @settings(max_examples=200, deadline=None)
    def test_tokenize_deterministic_and_clean(self, text):
        a = tokenize(text)
        assert a == tokenize(text)
        for tok in a:
            assert tok == tok.lower()
            assert all(c.isalnum() or c == "-" for c in tok)


class TestRoundTrip:
    def test_save_load_structural_identity(self, tmp_path):
        corpus = make_corpus(["Cats purr. Dogs bark.", "Fish swim."], titles=["One", "Two"])
        vocab = build_vocabulary(corpus, min_count=1)
        save_corpus(corpus, tmp_path, vocabulary=vocab)
        loaded = load_corpus(tmp_path, "test")
        assert [p.to_json() for p in loaded.papers] == [p.to_json() for p in corpus.papers]
        assert [(s.paper_id, s.index, s.raw, s.tokens) for s in loaded.sentences] == [
            (s.paper_id, s.index, s.raw, s.tokens) for s in corpus.sentences
        ]
        assert loaded.fingerprint() == corpus.fingerprint()
        loaded_vocab = load_vocabulary(tmp_path, "test")
        assert loaded_vocab.tokens == vocab.tokens
        assert loaded_vocab.frequencies == vocab.frequencies


def stub_graph():
    """2 seeds, each with 2 outgoing + 2 incoming, no overlap -> 10 papers."""
    records = {
        "s1": {"title": "Seed one", "body": "b", "cited": ["n1", "n2"], "citing": ["n3", "n4"]},
        "s2": {"title": "Seed two", "body": "b", "cited": ["n5", "n6"], "citing": ["n7", "n8"]},
    }
    for i in range(1, 9):
        records[f"n{i}"] = {"title": f"Neighbor {i}", "body": "some text"}
    return records


class TestExpand:
    def seeds(self):
        return [
            PaperRecord(paper_id="s1", title="Seed one", body="b", domain_tag="d"),
            PaperRecord(paper_id="s2", title="Seed two", body="b", domain_tag="d"),
        ]

    def test_hand_enumerated_stub_graph(self):
        result = expand_citations(self.seeds(), StaticCitationClient(stub_graph()))
        assert len(result.papers) == 10
        assert result.errors == []
        assert all(p.domain_tag == "d" for p in result.papers)
        # size bound: |seeds| + sum of neighbors, equality iff no duplicates
        assert len(result.papers) == 2 + 8

    def test_seed_as_neighbor_not_duplicated(self):
        records = stub_graph()
        records["s1"]["cited"] = ["s2", "n1"]
        result = expand_citations(self.seeds(), StaticCitationClient(records))
        ids = [p.paper_id for p in result.papers]
        assert ids.count("s2") == 1
        assert len(ids) == len(set(ids))
        assert len(result.papers) < 2 + 9  # strict: a duplicate was collapsed

    def test_failed_seed_skipped_and_recorded(self):
        client = StaticCitationClient(stub_graph(), fail_ids={"s1"})
        result = expand_citations(self.seeds(), client)
        assert len(result.errors) == 1
        assert result.errors[0][0] == "s1"
        ids = {p.paper_id for p in result.papers}
        assert {"s2", "n5", "n6", "n7", "n8"} <= ids
        assert "n1" not in ids

    def test_all_failed_fatal(self):
        client = StaticCitationClient(stub_graph(), fail_ids={"s1", "s2"})
        with pytest.raises(CitationError):
            expand_citations(self.seeds(), client)

    def test_deeper_levels_rejected(self):
        with pytest.raises(ValueError):
            expand_citations(self.seeds(), StaticCitationClient(stub_graph()), levels=2)


class TestVocabulary:
    def corpus_with(self, counts: dict[str, int]):
        body = ". ".join(" ".join([tok] * n) for tok, n in counts.items()) + "."
        return make_corpus([body])

    def test_tiebreak_lexicographic(self):
        vocab = build_vocabulary(self.corpus_with({"b": 5, "a": 5, "c": 1}), min_count=2)
        assert vocab.tokens == ["a", "b"]
        assert vocab.index == {"a": 0, "b": 1}

    def test_min_count_one_keeps_all(self):
        vocab = build_vocabulary(self.corpus_with({"b": 5, "a": 5, "c": 1}), min_count=1)
        assert len(vocab) == 3

    def test_empty_vocab_fatal(self):
        with pytest.raises(VocabularyError):
            build_vocabulary(self.corpus_with({"a": 1}), min_count=10)

    def test_fixture_vocab_matches_brute_count(self):
        from collections import Counter

        corpus = segment_and_tokenize(ingest_records(FIXTURES / "cogsci.jsonl", "cogsci"))
        counts = Counter(tok for s in corpus.sentences for tok in s.tokens)
        expected = sorted((t for t, n in counts.items() if n >= 2), key=lambda t: (-counts[t], t))
        vocab = build_vocabulary(corpus, min_count=2)
        assert vocab.tokens == expected

    def test_stats_validation_catches_drift(self):
        corpus = make_corpus(["Cats purr."])
        corpus.stats.tokens += 1
        with pytest.raises(ValueError):
            corpus.validate()
