"""Closed-form orthogonal map between paired rows of two spaces.

Among all orthogonal k x k matrices, the returned map minimizes the summed
squared error over dictionary pairs; rows map as ``x @ W.T``.
"""

from __future__ import annotations

import logging

import numpy as np

from ..errors import AlignmentError
from .dictionary import SeedDictionary

log = logging.getLogger(__name__)


def procrustes_matrix(
    source: np.ndarray, target: np.ndarray, pairs: SeedDictionary | list[tuple[int, int]]
) -> np.ndarray:
    if isinstance(pairs, SeedDictionary):
        pairs = pairs.pairs
    if not pairs:
        raise AlignmentError("empty dictionary")
    if source.shape[1] != target.shape[1]:
        raise AlignmentError(
            f"dimension mismatch: {source.shape[1]} vs {target.shape[1]}"
        )
    k = source.shape[1]
    if len(pairs) < k:
        log.warning("dictionary has %d pairs for k=%d; solution may be loose", len(pairs), k)
    idx = np.asarray(pairs, dtype=np.int64)
    xs = source[idx[:, 0]]
    xt = target[idx[:, 1]]
    u, _, vt = np.linalg.svd(xt.T @ xs)
    return u @ vt


def procrustes(source_space, target_space, dictionary: SeedDictionary) -> np.ndarray:
    """Space-level wrapper; both spaces must already share a normalization."""
    dictionary.validate(len(source_space.vocab), len(target_space.vocab))
    return procrustes_matrix(
        np.asarray(source_space.matrix, dtype=np.float64),
        np.asarray(target_space.matrix, dtype=np.float64),
        dictionary,
    )


def pair_loss(source: np.ndarray, target: np.ndarray, pairs, rotation: np.ndarray) -> float:
    """Frobenius loss of a candidate orthogonal map over dictionary pairs."""
    if isinstance(pairs, SeedDictionary):
        pairs = pairs.pairs
    idx = np.asarray(pairs, dtype=np.int64)
    diff = source[idx[:, 0]] @ rotation.T - target[idx[:, 1]]
    return float(np.sum(diff * diff))
