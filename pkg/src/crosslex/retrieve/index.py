"""Persistent inverted token index over a corpus.

Context retrieval dominates query latency, so the index is built once per
corpus and stored in a small versioned binary:

    magic   4 bytes  b"CLXI"
    version u32      currently 1
    ntokens u32
    then per token, in vocabulary-agnostic sorted-token order:
        tlen  u32, token utf-8 bytes,
        npost u32, npost x (paper_ordinal u32, sentence_ordinal u32)

Paper ordinal is the position in the corpus paper list (the persisted,
paper-id-sorted corpus order); sentence ordinal is the sentence's index
within its paper. Postings are stored in corpus order.
"""

from __future__ import annotations

import struct
from pathlib import Path

from ..errors import CrosslexError
from ..ioutil import atomic_write_bytes

MAGIC = b"CLXI"
VERSION = 1


class InvertedIndex:
    def __init__(self, postings: dict[str, list[tuple[int, int]]]):
        self.postings = postings

    @classmethod
    def build(cls, corpus) -> "InvertedIndex":
        ordinal = {p.paper_id: i for i, p in enumerate(corpus.papers)}
        postings: dict[str, list[tuple[int, int]]] = {}
        for sent in corpus.sentences:
            p_ord = ordinal[sent.paper_id]
            for tok in dict.fromkeys(sent.tokens):  # unique, order-preserving
                postings.setdefault(tok, []).append((p_ord, sent.index))
        return cls(postings)

    def lookup(self, token: str) -> list[tuple[int, int]]:
        return self.postings.get(token, [])

    def __len__(self) -> int:
        return len(self.postings)

    def save(self, path: str | Path) -> None:
        chunks = [MAGIC, struct.pack("<II", VERSION, len(self.postings))]
        for token in sorted(self.postings):
            plist = self.postings[token]
            raw = token.encode("utf-8")
            chunks.append(struct.pack("<I", len(raw)))
            chunks.append(raw)
            chunks.append(struct.pack("<I", len(plist)))
            chunks.append(struct.pack(f"<{2 * len(plist)}I", *[v for pair in plist for v in pair]))
        atomic_write_bytes(path, b"".join(chunks))

    @classmethod
    def load(cls, path: str | Path) -> "InvertedIndex":
        data = Path(path).read_bytes()
        if data[:4] != MAGIC:
            raise CrosslexError(f"{path}: not an index file")
        version, n_tokens = struct.unpack_from("<II", data, 4)
        if version != VERSION:
            raise CrosslexError(f"{path}: unsupported index version {version}")
        pos = 12
        postings: dict[str, list[tuple[int, int]]] = {}
        for _ in range(n_tokens):
            (tlen,) = struct.unpack_from("<I", data, pos)
            pos += 4
            token = data[pos : pos + tlen].decode("utf-8")
            pos += tlen
            (npost,) = struct.unpack_from("<I", data, pos)
            pos += 4
            flat = struct.unpack_from(f"<{2 * npost}I", data, pos)
            pos += 8 * npost
            postings[token] = [(flat[i], flat[i + 1]) for i in range(0, 2 * npost, 2)]
        if pos != len(data):
            raise CrosslexError(f"{path}: trailing bytes after postings")
        return cls(postings)
