"""Human-judgment capture and export.

Three schemes are first-class:

* ``cs1``        relevance 0-2 and novelty 0-2 (blind spreadsheet rating)
* ``cs2``        categorical: sensible / sensible_new / neither (think-aloud)
* ``screening``  -1 not relevant / 0 generic or unsure / 1 very relevant and
                 sensible (query screening by two raters)

A response term is a *potential hit* when any rater judged it top-category
for its scheme (screening 1, cs1 relevance 2, cs2 sensible or sensible_new).
For averaging, cs2 labels map to neither=0, sensible=1, sensible_new=2.

The store is an append-only jsonl file behind a single-writer lock; export
produces one row per (home, query, target) with the average rating, the
potential-hit count, and the hit terms.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ..errors import RatingSchemeError

CS2_LABELS = ("sensible", "sensible_new", "neither")
_CS2_NUMERIC = {"neither": 0.0, "sensible": 1.0, "sensible_new": 2.0}


@dataclass
class RatingRecord:
    home_domain: str
    query_term: str
    target_domain: str
    response_term: str
    scheme: str  # cs1 | cs2 | screening
    values: dict
    rater_id: str
    context_id: str = ""
    pipeline: str = ""
    timestamp: str = ""

    def __post_init__(self):
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat()
        self.validate()

    def validate(self) -> None:
        if self.scheme == "cs1":
            for key in ("relevance", "novelty"):
                v = self.values.get(key)
                if v not in (0, 1, 2):
                    raise RatingSchemeError(f"cs1 {key} must be 0, 1, or 2; got {v!r}")
        elif self.scheme == "cs2":
            if self.values.get("label") not in CS2_LABELS:
                raise RatingSchemeError(f"cs2 label must be one of {CS2_LABELS}; got {self.values.get('label')!r}")
        elif self.scheme == "screening":
            if self.values.get("rating") not in (-1, 0, 1):
                raise RatingSchemeError(f"screening rating must be -1, 0, or 1; got {self.values.get('rating')!r}")
        else:
            raise RatingSchemeError(f"unknown scheme {self.scheme!r}")

    def numeric(self) -> float:
        if self.scheme == "cs1":
            return float(self.values["relevance"])
        if self.scheme == "cs2":
            return _CS2_NUMERIC[self.values["label"]]
        return float(self.values["rating"])

    def is_potential_hit(self) -> bool:
        if self.scheme == "cs1":
            return self.values["relevance"] == 2
        if self.scheme == "cs2":
            return self.values["label"] in ("sensible", "sensible_new")
        return self.values["rating"] == 1

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class ExportRow:
    home_domain: str
    query_term: str
    target_domain: str
    n_ratings: int
    avg_rating: float
    potential_hits: int
    hit_terms: list[str] = field(default_factory=list)


class RatingStore:
    """Append-only rating log; writes are serialized through one lock."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, record: RatingRecord) -> str:
        record.validate()
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            count = sum(1 for _ in self._lines()) if self.path.exists() else 0
            rating_id = f"r{count:06d}"
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps({"id": rating_id, **record.to_json()}, sort_keys=True) + "\n")
                f.flush()
        return rating_id

    def _lines(self):
        with open(self.path, encoding="utf-8") as f:
            for line in f:
                if line.strip():
                    yield line

    def records(self) -> list[tuple[str, RatingRecord]]:
        if not self.path.exists():
            return []
        out = []
        for line in self._lines():
            obj = json.loads(line)
            rid = obj.pop("id")
            out.append((rid, RatingRecord(**obj)))
        return out


def record_rating(record: RatingRecord, store: RatingStore) -> str:
    return store.append(record)


def potential_hit_terms(records: list[RatingRecord]) -> list[str]:
    """Terms where at least one rater gave the top judgment."""
    hits = {r.response_term for r in records if r.is_potential_hit()}
    return sorted(hits)


def export_rows(store: RatingStore) -> list[ExportRow]:
    grouped: dict[tuple[str, str, str], list[RatingRecord]] = {}
    for _, rec in store.records():
        grouped.setdefault((rec.home_domain, rec.query_term, rec.target_domain), []).append(rec)
    rows = []
    for (home, query, target) in sorted(grouped):
        records = grouped[(home, query, target)]
        hits = potential_hit_terms(records)
        rows.append(
            ExportRow(
                home_domain=home,
                query_term=query,
                target_domain=target,
                n_ratings=len(records),
                avg_rating=sum(r.numeric() for r in records) / len(records),
                potential_hits=len(hits),
                hit_terms=hits,
            )
        )
    return rows


def export_csv(store: RatingStore) -> str:
    lines = ["home,query,target,n_ratings,avg_rating,potential_hits,hit_terms"]
    for row in export_rows(store):
        terms = ";".join(row.hit_terms)
        lines.append(
            f"{row.home_domain},{row.query_term},{row.target_domain},"
            f"{row.n_ratings},{row.avg_rating:.4f},{row.potential_hits},{terms}"
        )
    return "\n".join(lines) + "\n"
