"""Small statistics helpers."""

from __future__ import annotations

import numpy as np


def pearson(xs, ys) -> float:
    """Sample Pearson correlation. Requires equal lengths >= 3 and nonzero
    variance on both sides."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    if x.size < 3:
        raise ValueError("need at least 3 points")
    dx = x - x.mean()
    dy = y - y.mean()
    sx = np.sqrt((dx * dx).sum())
    sy = np.sqrt((dy * dy).sum())
    if sx == 0.0 or sy == 0.0:
        raise ValueError("zero variance")
    return float(np.clip((dx * dy).sum() / (sx * sy), -1.0, 1.0))
