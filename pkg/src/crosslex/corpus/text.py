"""Rule-based sentence segmentation and tokenization.

Both functions are pure and deterministic: the same input bytes always
produce the same output, independent of thread count or iteration order.
"""

from __future__ import annotations

import re

TOKENIZER_VERSION = "rule-v1"

# Abbreviations that commonly precede a period mid-sentence. Compared against
# the last whitespace-delimited chunk before a candidate boundary, lowercased,
# with the boundary period itself excluded.
_ABBREVIATIONS = frozenset(
    {
        "al", "approx", "ca", "cf", "dr", "e.g", "ed", "eds", "eq", "eqs",
        "et", "etc", "fig", "figs", "i.e", "jr", "mr", "mrs", "ms", "no",
        "nos", "p", "pp", "prof", "resp", "sec", "sect", "st", "tab", "vol",
        "vols", "vs",
    }
)

# Terminal punctuation, then whitespace, then an uppercase letter.
_BOUNDARY = re.compile(r"[.!?](?=\s+[A-Z])")

# Lowercased alphanumeric runs, allowing internal hyphens so terms like
# "boundary-crossing" survive as one token.
_TOKEN = re.compile(r"[a-z0-9]+(?:-[a-z0-9]+)*")


def split_sentences(text: str) -> list[str]:
    """Split ``text`` into sentences on terminal punctuation followed by
    whitespace and a capital letter, unless the preceding chunk is a known
    abbreviation. Returns stripped, non-empty sentences."""
    if not text or not text.strip():
        return []
    boundaries = []
    for m in _BOUNDARY.finditer(text):
        prefix = text[: m.start()]
        chunks = prefix.rsplit(None, 1)
        last = chunks[-1] if chunks else ""
        if last.lower().rstrip(".").lstrip("(").lstrip("[") in _ABBREVIATIONS:
            continue
        boundaries.append(m.end())
    sentences = []
    start = 0
    for end in boundaries:
        piece = text[start:end].strip()
        if piece:
            sentences.append(piece)
        start = end
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def tokenize(sentence: str) -> list[str]:
    """Lowercase and extract alphanumeric tokens; digits kept, punctuation
    other than internal hyphens stripped."""
    return _TOKEN.findall(sentence.lower())


def segment_and_tokenize(corpus):
    """Populate ``corpus.sentences`` from each paper's title and body.

    The title, when non-empty, becomes sentence 0 of its paper. Papers with
    empty bodies contribute only their title sentence; fully empty papers
    contribute nothing.
    """
    from .records import Sentence

    sentences = []
    for paper in corpus.papers:
        index = 0
        pieces = []
        if paper.title.strip():
            pieces.append(paper.title.strip())
        pieces.extend(split_sentences(paper.body))
        for raw in pieces:
            tokens = tokenize(raw)
            if not tokens:
                continue
            sentences.append(
                Sentence(paper_id=paper.paper_id, index=index, raw=raw, tokens=tokens)
            )
            index += 1
    corpus.sentences = sentences
    corpus.refresh_stats()
    return corpus
