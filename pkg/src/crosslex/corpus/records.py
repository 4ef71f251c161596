"""Paper records and per-domain corpora.

Input is line-delimited JSON, one record per line, UTF-8:

    {"id": ..., "title": ..., "body": ..., "url": ..., "cited": [...], "citing": [...]}

``body`` is typically an abstract; full text is accepted if present.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import IngestError

log = logging.getLogger(__name__)


@dataclass
class PaperRecord:
    paper_id: str
    title: str
    body: str
    domain_tag: str
    url: str | None = None
    cited_ids: list[str] = field(default_factory=list)
    citing_ids: list[str] = field(default_factory=list)

    def validate(self) -> None:
        if not self.paper_id:
            raise ValueError("paper_id must be non-empty")
        if not self.domain_tag:
            raise ValueError("domain_tag must be non-empty")
        if not self.body and not self.title:
            raise ValueError(f"paper {self.paper_id}: body may be empty only if title is not")

    def to_json(self) -> dict:
        return {
            "id": self.paper_id,
            "title": self.title,
            "body": self.body,
            "url": self.url,
            "domain": self.domain_tag,
            "cited": list(self.cited_ids),
            "citing": list(self.citing_ids),
        }

    @classmethod
    def from_json(cls, obj: dict, domain_tag: str | None = None) -> "PaperRecord":
        rec = cls(
            paper_id=str(obj["id"]),
            title=str(obj.get("title") or ""),
            body=str(obj.get("body") or ""),
            domain_tag=domain_tag or str(obj.get("domain") or ""),
            url=obj.get("url") or None,
            cited_ids=[str(x) for x in obj.get("cited") or []],
            citing_ids=[str(x) for x in obj.get("citing") or []],
        )
        rec.validate()
        return rec


@dataclass
class Sentence:
    paper_id: str
    index: int
    raw: str
    tokens: list[str]


@dataclass
class CorpusStats:
    papers: int = 0
    sentences: int = 0
    tokens: int = 0
    skipped_lines: int = 0
    duplicate_ids: int = 0

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class DomainCorpus:
    domain_id: str
    papers: list[PaperRecord] = field(default_factory=list)
    sentences: list[Sentence] = field(default_factory=list)
    stats: CorpusStats = field(default_factory=CorpusStats)
    phrase_passes: list[list[tuple[str, str]]] = field(default_factory=list)

    def refresh_stats(self) -> None:
        self.stats.papers = len(self.papers)
        self.stats.sentences = len(self.sentences)
        self.stats.tokens = sum(len(s.tokens) for s in self.sentences)

    def validate(self) -> None:
        ids = {p.paper_id for p in self.papers}
        if len(ids) != len(self.papers):
            raise ValueError("duplicate paper_id in corpus")
        for s in self.sentences:
            if s.paper_id not in ids:
                raise ValueError(f"sentence references unknown paper {s.paper_id}")
        recomputed = (len(self.papers), len(self.sentences), sum(len(s.tokens) for s in self.sentences))
        stored = (self.stats.papers, self.stats.sentences, self.stats.tokens)
        if recomputed != stored:
            raise ValueError(f"stats {stored} do not match recomputed counts {recomputed}")

    def paper_by_id(self, paper_id: str) -> PaperRecord:
        for p in self.papers:
            if p.paper_id == paper_id:
                return p
        raise KeyError(paper_id)

    def fingerprint(self) -> str:
        """Content hash over papers and sentence token streams, independent
        of in-memory ordering quirks (papers hashed in list order, which is
        ingestion order by contract)."""
        h = hashlib.sha256()
        for p in self.papers:
            h.update(p.paper_id.encode())
            h.update(b"\x00")
            h.update(p.title.encode())
            h.update(b"\x00")
            h.update(p.body.encode())
            h.update(b"\x01")
        for s in self.sentences:
            h.update(s.paper_id.encode())
            h.update(str(s.index).encode())
            h.update(" ".join(s.tokens).encode())
            h.update(b"\x01")
        return h.hexdigest()


def ingest_records(path: str | Path, domain_tag: str) -> DomainCorpus:
    """Read line-delimited JSON records into a corpus (papers only).

    Malformed lines are skipped and counted; duplicate ids keep the first
    occurrence. An unreadable file is fatal.
    """
    path = Path(path)
    try:
        raw_lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc

    corpus = DomainCorpus(domain_id=domain_tag)
    seen: set[str] = set()
    for lineno, line in enumerate(raw_lines, start=1):
        if not line.strip():
            continue
        try:
            rec = PaperRecord.from_json(json.loads(line), domain_tag=domain_tag)
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            corpus.stats.skipped_lines += 1
            log.warning("%s:%d skipped malformed record: %s", path, lineno, exc)
            continue
        if rec.paper_id in seen:
            corpus.stats.duplicate_ids += 1
            log.warning("%s:%d duplicate paper_id %s (first occurrence kept)", path, lineno, rec.paper_id)
            continue
        seen.add(rec.paper_id)
        corpus.papers.append(rec)
    corpus.refresh_stats()
    return corpus
