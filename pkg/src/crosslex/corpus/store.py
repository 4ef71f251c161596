"""Corpus persistence under ``<ws>/corpora/<domain_id>/``.

Files: ``papers.jsonl``, ``sentences.jsonl``, ``vocab.tsv`` (token TAB
frequency TAB index), ``manifest.json``. Papers are sorted by paper id and
sentences by (paper id, index) before writing, so concurrent builds persist
identically regardless of in-flight ordering; the persisted order is the
corpus order all downstream iteration uses.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..ioutil import atomic_write_json, atomic_write_text, read_json
from .records import CorpusStats, DomainCorpus, PaperRecord, Sentence
from .text import TOKENIZER_VERSION
from .vocab import Vocabulary


def corpus_dir(workspace: str | Path, domain_id: str) -> Path:
    return Path(workspace) / "corpora" / domain_id


def save_corpus(
    corpus: DomainCorpus,
    workspace: str | Path,
    vocabulary: Vocabulary | None = None,
    phrase_params: dict | None = None,
) -> Path:
    corpus.papers.sort(key=lambda p: p.paper_id)
    corpus.sentences.sort(key=lambda s: (s.paper_id, s.index))
    corpus.refresh_stats()
    corpus.validate()

    out = corpus_dir(workspace, corpus.domain_id)
    out.mkdir(parents=True, exist_ok=True)

    atomic_write_text(
        out / "papers.jsonl",
        "".join(json.dumps(p.to_json(), sort_keys=True) + "\n" for p in corpus.papers),
    )
    atomic_write_text(
        out / "sentences.jsonl",
        "".join(
            json.dumps(
                {"paper_id": s.paper_id, "index": s.index, "raw": s.raw, "tokens": s.tokens},
                sort_keys=True,
            )
            + "\n"
            for s in corpus.sentences
        ),
    )
    if vocabulary is not None:
        atomic_write_text(
            out / "vocab.tsv",
            "".join(
                f"{tok}\t{freq}\t{i}\n"
                for i, (tok, freq) in enumerate(zip(vocabulary.tokens, vocabulary.frequencies))
            ),
        )
    manifest = {
        "domain_id": corpus.domain_id,
        "stats": corpus.stats.to_json(),
        "tokenizer_version": TOKENIZER_VERSION,
        "phrase_passes": [[list(pair) for pair in merged] for merged in corpus.phrase_passes],
        "phrase_params": phrase_params or {},
        "vocab_min_count": vocabulary.min_count if vocabulary is not None else None,
        "fingerprint": corpus.fingerprint(),
    }
    atomic_write_json(out / "manifest.json", manifest)
    return out


def load_corpus(workspace: str | Path, domain_id: str) -> DomainCorpus:
    src = corpus_dir(workspace, domain_id)
    manifest = read_json(src / "manifest.json")
    corpus = DomainCorpus(domain_id=domain_id)
    for line in (src / "papers.jsonl").read_text(encoding="utf-8").splitlines():
        if line.strip():
            corpus.papers.append(PaperRecord.from_json(json.loads(line)))
    sentences_path = src / "sentences.jsonl"
    if sentences_path.exists():
        for line in sentences_path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                obj = json.loads(line)
                corpus.sentences.append(
                    Sentence(
                        paper_id=obj["paper_id"],
                        index=obj["index"],
                        raw=obj["raw"],
                        tokens=obj["tokens"],
                    )
                )
    corpus.phrase_passes = [
        [tuple(pair) for pair in merged] for merged in manifest.get("phrase_passes", [])
    ]
    stored = manifest.get("stats", {})
    corpus.stats = CorpusStats(**{k: stored.get(k, 0) for k in CorpusStats().__dict__})
    corpus.validate()
    return corpus


def load_vocabulary(workspace: str | Path, domain_id: str) -> Vocabulary:
    src = corpus_dir(workspace, domain_id)
    manifest = read_json(src / "manifest.json")
    tokens: list[str] = []
    frequencies: list[int] = []
    for line in (src / "vocab.tsv").read_text(encoding="utf-8").splitlines():
        tok, freq, idx = line.split("\t")
        assert int(idx) == len(tokens), "vocab.tsv indices must be dense and ordered"
        tokens.append(tok)
        frequencies.append(int(freq))
    return Vocabulary(tokens=tokens, frequencies=frequencies, min_count=manifest.get("vocab_min_count") or 1)
