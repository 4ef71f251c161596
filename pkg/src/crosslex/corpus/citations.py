"""Citation-source clients and one-level citation expansion.

Two client implementations share one interface:

* ``StaticCitationClient``: deterministic in-memory graph, used by tests and
  the bundled fixture.
* ``HttpCitationClient``: talks to a Semantic-Scholar-compatible endpoint:
  ``GET <base>/paper/<id>?fields=citations,references,title,abstract,url``.
  Requests are rate limited (at most one per interval) and retried with
  exponential backoff.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

import httpx

from ..errors import CitationError
from .records import PaperRecord

log = logging.getLogger(__name__)


@dataclass
class PaperNode:
    """One resolved paper: its metadata plus one level of neighbors."""

    paper_id: str
    title: str = ""
    body: str = ""
    url: str | None = None
    cited: list["PaperNode"] = field(default_factory=list)   # outgoing (references)
    citing: list["PaperNode"] = field(default_factory=list)  # incoming (citations)


class CitationClient(Protocol):
    def lookup(self, paper_id: str) -> PaperNode:
        """Resolve a paper id to metadata and level-1 neighbors.

        Raises on failure; never returns None.
        """
        ...


class StaticCitationClient:
    """Resolves lookups against a fixed record table.

    ``records`` maps paper_id -> {"title", "body", "url", "cited": [...],
    "citing": [...]}. Neighbor ids missing from the table resolve to stubs
    whose title is the id itself.
    """

    def __init__(self, records: dict[str, dict], fail_ids: set[str] | None = None):
        self.records = records
        self.fail_ids = fail_ids or set()
        self.calls = 0

    @classmethod
    def from_jsonl(cls, path: str | Path) -> "StaticCitationClient":
        records = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            records[str(obj["id"])] = obj
        return cls(records)

    def _node(self, paper_id: str, with_neighbors: bool) -> PaperNode:
        obj = self.records.get(paper_id, {})
        node = PaperNode(
            paper_id=paper_id,
            title=str(obj.get("title") or paper_id),
            body=str(obj.get("body") or ""),
            url=obj.get("url") or None,
        )
        if with_neighbors:
            node.cited = [self._node(str(i), False) for i in obj.get("cited") or []]
            node.citing = [self._node(str(i), False) for i in obj.get("citing") or []]
        return node

    def lookup(self, paper_id: str) -> PaperNode:
        self.calls += 1
        if paper_id in self.fail_ids:
            raise CitationError(f"stub failure for {paper_id}")
        if paper_id not in self.records:
            raise CitationError(f"unknown paper {paper_id}")
        return self._node(paper_id, True)


class HttpCitationClient:
    FIELDS = "citations,references,title,abstract,url"

    def __init__(
        self,
        base_url: str,
        min_interval: float = 1.0,
        max_retries: int = 3,
        timeout: float = 30.0,
    ):
        self.base_url = base_url.rstrip("/")
        self.min_interval = min_interval
        self.max_retries = max_retries
        self._client = httpx.Client(timeout=timeout)
        self._last_request = 0.0

    def _throttle(self) -> None:
        wait = self.min_interval - (time.monotonic() - self._last_request)
        if wait > 0:
            time.sleep(wait)
        self._last_request = time.monotonic()

    def _get(self, url: str) -> dict:
        delay = self.min_interval or 1.0
        for attempt in range(self.max_retries + 1):
            self._throttle()
            try:
                resp = self._client.get(url)
                resp.raise_for_status()
                return resp.json()
            except (httpx.HTTPError, ValueError) as exc:
                if attempt == self.max_retries:
                    raise CitationError(f"GET {url} failed: {exc}") from exc
                log.warning("GET %s failed (%s), retrying in %.1fs", url, exc, delay)
                time.sleep(delay)
                delay *= 2
        raise CitationError(f"GET {url} failed")  # unreachable

    @staticmethod
    def _stub(obj: dict) -> PaperNode:
        return PaperNode(
            paper_id=str(obj.get("paperId") or obj.get("id") or ""),
            title=str(obj.get("title") or ""),
            body=str(obj.get("abstract") or ""),
            url=obj.get("url") or None,
        )

    def lookup(self, paper_id: str) -> PaperNode:
        obj = self._get(f"{self.base_url}/paper/{paper_id}?fields={self.FIELDS}")
        node = self._stub(obj)
        node.paper_id = node.paper_id or paper_id
        node.cited = [self._stub(o) for o in obj.get("references") or [] if o.get("paperId")]
        node.citing = [self._stub(o) for o in obj.get("citations") or [] if o.get("paperId")]
        return node


@dataclass
class ExpansionResult:
    papers: list[PaperRecord]
    errors: list[tuple[str, str]]  # (paper_id, message)


def expand_citations(
    seeds: list[PaperRecord], client: CitationClient, levels: int = 1
) -> ExpansionResult:
    """Grow a seed set by one level of incoming and outgoing citations.

    Returns seeds plus their level-1 neighbors, deduplicated by paper id with
    the first occurrence winning (seeds before neighbors, in input order).
    Every result carries the seed set's domain tag. A failed lookup skips
    that seed's neighbors and is recorded; if every lookup fails, the
    expansion is fatal.
    """
    if levels != 1:
        raise ValueError(f"only single-level expansion is supported, got levels={levels}")
    if not seeds:
        raise CitationError("no seed papers given")

    domain_tag = seeds[0].domain_tag
    errors: list[tuple[str, str]] = []
    out: list[PaperRecord] = []
    seen: set[str] = set()

    def add(rec: PaperRecord) -> None:
        if rec.paper_id not in seen:
            seen.add(rec.paper_id)
            out.append(rec)

    neighbor_nodes: list[PaperNode] = []
    for seed in seeds:
        try:
            node = client.lookup(seed.paper_id)
        except Exception as exc:  # client failures are data, not bugs
            errors.append((seed.paper_id, str(exc)))
            add(seed)
            continue
        enriched = PaperRecord(
            paper_id=seed.paper_id,
            title=seed.title or node.title,
            body=seed.body or node.body,
            domain_tag=domain_tag,
            url=seed.url or node.url,
            cited_ids=[n.paper_id for n in node.cited],
            citing_ids=[n.paper_id for n in node.citing],
        )
        add(enriched)
        neighbor_nodes.extend(node.cited)
        neighbor_nodes.extend(node.citing)

    if len(errors) == len(seeds):
        raise CitationError(f"all {len(seeds)} seed lookups failed: {errors}")

    for node in neighbor_nodes:
        rec = PaperRecord(
            paper_id=node.paper_id,
            title=node.title or node.paper_id,
            body=node.body,
            domain_tag=domain_tag,
            url=node.url,
        )
        add(rec)

    return ExpansionResult(papers=out, errors=errors)
