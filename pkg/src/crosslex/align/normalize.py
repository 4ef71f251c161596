"""Space preprocessing applied identically to both sides before alignment.

The recipe is an ordered list of step names; the default
(unit_length, mean_center, unit_length) is the standard preparation for
orthogonal alignment methods. The recipe used is recorded inside every
alignment artifact so retrieval can reproduce it exactly.
"""

from __future__ import annotations

import numpy as np

from ..errors import AlignmentError

DEFAULT_RECIPE = ("unit_length", "mean_center", "unit_length")


def normalize_matrix(matrix: np.ndarray, steps=DEFAULT_RECIPE) -> np.ndarray:
    """Apply steps in order to a copy of ``matrix``."""
    out = np.array(matrix, dtype=np.float64, copy=True)
    for step in steps:
        if step == "unit_length":
            norms = np.linalg.norm(out, axis=1, keepdims=True)
            if (norms == 0).any():
                raise AlignmentError("zero row encountered before a unit_length step")
            out /= norms
        elif step == "mean_center":
            out -= out.mean(axis=0, keepdims=True)
        else:
            raise AlignmentError(f"unknown normalization step {step!r}")
    return out


def normalize_space(space, steps=DEFAULT_RECIPE):
    """Space-level wrapper: returns a new EmbeddingSpace with the same
    vocabulary and a normalized matrix."""
    from ..embed.space import EmbeddingSpace

    return EmbeddingSpace(
        vocab=space.vocab,
        matrix=normalize_matrix(space.matrix, steps).astype(np.float32),
        meta=dict(space.meta, normalized=list(steps)),
    )
