"""Alignment artifacts and cross-space term mapping.

An alignment stores the orthogonal transform, the normalization recipe both
spaces were prepared with (so retrieval reproduces it exactly), the method
tag, the per-iteration objective log, and seed provenance.

On disk: ``W.tsv`` (k rows of k tab-separated components) plus ``meta.json``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import AlignmentError, OOVTermError
from ..ioutil import atomic_write_json, atomic_write_text, read_json
from .csls import csls_scores
from .normalize import normalize_matrix

ORTHOGONALITY_TOL = 1e-6


@dataclass
class AlignmentMap:
    source_domain: str
    target_domain: str
    rotation: np.ndarray  # (k, k); rows map as x @ rotation.T
    recipe: list[str]
    method: str  # procrustes_refine | self_learn
    iteration_log: list[dict] = field(default_factory=list)
    seed_origin: str = ""
    warning: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rotation = np.asarray(self.rotation, dtype=np.float64)
        self.validate()

    def validate(self) -> None:
        k = self.rotation.shape[0]
        if self.rotation.shape != (k, k):
            raise AlignmentError(f"transform must be square, got {self.rotation.shape}")
        gram = self.rotation.T @ self.rotation
        err = float(np.abs(gram - np.eye(k)).max())
        if err > ORTHOGONALITY_TOL:
            raise AlignmentError(f"transform is not orthogonal (max deviation {err:.2e})")
        if not self.recipe:
            raise AlignmentError("normalization recipe must be non-empty")

    def orthogonality_error(self) -> float:
        k = self.rotation.shape[0]
        return float(np.abs(self.rotation.T @ self.rotation - np.eye(k)).max())

    def apply(self, source_matrix: np.ndarray) -> np.ndarray:
        return np.asarray(source_matrix, dtype=np.float64) @ self.rotation.T

    def save(self, directory: str | Path) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        atomic_write_text(
            directory / "W.tsv",
            "\n".join("\t".join(f"{v:.17g}" for v in row) for row in self.rotation) + "\n",
        )
        atomic_write_json(
            directory / "meta.json",
            {
                "source_domain": self.source_domain,
                "target_domain": self.target_domain,
                "recipe": self.recipe,
                "method": self.method,
                "iteration_log": self.iteration_log,
                "seed_origin": self.seed_origin,
                "warning": self.warning,
                "meta": self.meta,
                "k": int(self.rotation.shape[0]),
            },
        )
        return directory

    @classmethod
    def load(cls, directory: str | Path) -> "AlignmentMap":
        directory = Path(directory)
        info = read_json(directory / "meta.json")
        rows = [
            [float(v) for v in line.split("\t")]
            for line in (directory / "W.tsv").read_text().splitlines()
            if line.strip()
        ]
        return cls(
            source_domain=info["source_domain"],
            target_domain=info["target_domain"],
            rotation=np.asarray(rows, dtype=np.float64),
            recipe=info["recipe"],
            method=info["method"],
            iteration_log=info.get("iteration_log", []),
            seed_origin=info.get("seed_origin", ""),
            warning=info.get("warning", False),
            meta=info.get("meta", {}),
        )


def map_term(
    alignment: AlignmentMap,
    source_space,
    target_space,
    term: str,
    n_best: int = 10,
    use_csls: bool = False,
) -> list[tuple[str, float]]:
    """Rank target-vocabulary terms against a home-domain term in the shared
    space. Scores are cosine by default (CSLS behind a flag, matching the
    induction metric); ties break by target vocabulary index, and asking for
    more terms than exist returns all."""
    if term not in source_space.vocab:
        raise OOVTermError(term, [])
    xs = normalize_matrix(source_space.matrix, alignment.recipe)
    xt = normalize_matrix(target_space.matrix, alignment.recipe)
    xt /= np.linalg.norm(xt, axis=1, keepdims=True)

    query = alignment.apply(xs[source_space.vocab.index[term]][None, :])
    query /= np.linalg.norm(query)

    if use_csls:
        mapped = alignment.apply(xs)
        mapped /= np.linalg.norm(mapped, axis=1, keepdims=True)
        scores = csls_scores(mapped, xt)[source_space.vocab.index[term]]
    else:
        scores = (xt @ query.ravel())

    order = np.argsort(-scores, kind="stable")[: min(n_best, len(scores))]
    return [(target_space.vocab.tokens[i], float(scores[i])) for i in order]
