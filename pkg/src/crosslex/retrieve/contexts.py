"""Capped context-sentence retrieval for a matched term.

Papers are visited in corpus order; each paper contributes at most
``max_per_paper`` sentences before the search moves on to the next paper
containing the term, stopping once ``max_total`` sentences are collected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import groupby

from ..corpus.phrases import JOINER
from .index import InvertedIndex


@dataclass
class ContextSentence:
    paper_id: str
    text: str
    url: str | None
    highlight: tuple[int, int] | None  # [start, end) character span of the term


def highlight_span(raw: str, term: str) -> tuple[int, int] | None:
    """Locate the surface form of a (possibly phrase-merged) term in raw
    sentence text, case-insensitively, on token boundaries."""
    parts = [re.escape(p) for p in term.split(JOINER)]
    pattern = re.compile(r"(?<![a-z0-9])" + r"[^a-z0-9]+".join(parts) + r"(?![a-z0-9])", re.IGNORECASE)
    m = pattern.search(raw)
    return (m.start(), m.end()) if m else None


def fetch_contexts(
    term: str,
    corpus,
    index: InvertedIndex,
    max_total: int = 5,
    max_per_paper: int = 2,
) -> list[ContextSentence]:
    """A term absent from the corpus yields an empty list, not an error."""
    postings = index.lookup(term)
    if not postings or max_total <= 0:
        return []
    sentences = {(s.paper_id, s.index): s for s in corpus.sentences}
    out: list[ContextSentence] = []
    for p_ord, group in groupby(sorted(postings), key=lambda pair: pair[0]):
        paper = corpus.papers[p_ord]
        taken = 0
        for _, s_ord in group:
            if taken == max_per_paper or len(out) == max_total:
                break
            sent = sentences[(paper.paper_id, s_ord)]
            out.append(
                ContextSentence(
                    paper_id=paper.paper_id,
                    text=sent.raw,
                    url=paper.url,
                    highlight=highlight_span(sent.raw, term),
                )
            )
            taken += 1
        if len(out) == max_total:
            break
    return out
