"""Embedding spaces: a vocabulary plus a |V| x k matrix, with similarity
primitives and the plain-text vector exchange format.

File format (interoperable with the common word-vector text format):

    <|V|> <k>
    <token> <c1> <c2> ... <ck>
    ...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..corpus.vocab import Vocabulary
from ..errors import CrosslexError
from ..ioutil import atomic_write_text


@dataclass
class EmbeddingSpace:
    vocab: Vocabulary
    matrix: np.ndarray  # (|V|, k) float32
    meta: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return int(self.matrix.shape[1])

    def __post_init__(self):
        self.matrix = np.ascontiguousarray(self.matrix, dtype=np.float32)
        if self.matrix.ndim != 2:
            raise CrosslexError("matrix must be 2-d")
        if self.matrix.shape[0] != len(self.vocab):
            raise CrosslexError(
                f"matrix has {self.matrix.shape[0]} rows for {len(self.vocab)} vocabulary entries"
            )
        if self.matrix.shape[1] < 2:
            raise CrosslexError("embedding dimension must be >= 2")
        if not np.isfinite(self.matrix).all():
            raise CrosslexError("matrix contains non-finite components")

    def vector(self, token: str) -> np.ndarray:
        return self.matrix[self.vocab.index[token]]

    def unit_rows(self) -> np.ndarray:
        norms = np.linalg.norm(self.matrix, axis=1, keepdims=True)
        if (norms == 0).any():
            raise CrosslexError("space has zero rows; cannot unit-normalize")
        return self.matrix / norms


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    u = np.asarray(u, dtype=np.float64).ravel()
    v = np.asarray(v, dtype=np.float64).ravel()
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for zero vectors")
    return float(np.clip(u @ v / (nu * nv), -1.0, 1.0))


def nearest_neighbors(
    space: EmbeddingSpace,
    query_vector: np.ndarray,
    n_best: int,
    exclude: set[str] | frozenset[str] = frozenset(),
) -> list[tuple[str, float]]:
    """Top tokens by descending cosine to the query, ties broken by
    vocabulary index. Asking for more neighbors than exist returns all."""
    if n_best < 1:
        raise ValueError("n_best must be >= 1")
    q = np.asarray(query_vector, dtype=np.float64).ravel()
    nq = np.linalg.norm(q)
    if nq == 0.0:
        raise ValueError("cosine undefined for zero vectors")
    norms = np.linalg.norm(space.matrix.astype(np.float64), axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    scores = (space.matrix.astype(np.float64) @ q) / (safe * nq)
    scores[norms == 0.0] = -np.inf
    # stable sort on negated scores: equal scores keep ascending index order
    order = np.argsort(-scores, kind="stable")
    out: list[tuple[str, float]] = []
    for idx in order:
        tok = space.vocab.tokens[idx]
        if tok in exclude:
            continue
        out.append((tok, float(scores[idx])))
        if len(out) == n_best:
            break
    return out


def save_space(space: EmbeddingSpace, path: str | Path) -> None:
    lines = [f"{len(space.vocab)} {space.k}"]
    for token, row in zip(space.vocab.tokens, space.matrix):
        lines.append(token + " " + " ".join(f"{c:.7f}" for c in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def load_space(path: str | Path, frequencies: list[int] | None = None) -> EmbeddingSpace:
    """Load a vector file. Row order is frequency order by construction;
    pass real frequencies when available, otherwise rank stands in."""
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2:
            raise CrosslexError(f"{path}: malformed header")
        n_rows, k = int(header[0]), int(header[1])
        tokens: list[str] = []
        matrix = np.empty((n_rows, k), dtype=np.float32)
        for i, line in enumerate(f):
            if not line.strip():
                continue
            if i >= n_rows:
                raise CrosslexError(f"{path}: more rows than header declares ({n_rows})")
            parts = line.rstrip("\n").split(" ")
            if len(parts) != k + 1:
                raise CrosslexError(f"{path}: row {i} has {len(parts) - 1} components, expected {k}")
            tokens.append(parts[0])
            matrix[i] = np.array(parts[1:], dtype=np.float32)
        if len(tokens) != n_rows:
            raise CrosslexError(f"{path}: header declares {n_rows} rows, found {len(tokens)}")
    freqs = frequencies if frequencies is not None else list(range(n_rows, 0, -1))
    vocab = Vocabulary(tokens=tokens, frequencies=freqs, min_count=1)
    return EmbeddingSpace(vocab=vocab, matrix=matrix)
