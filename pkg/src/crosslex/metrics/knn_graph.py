"""Cross-domain k-nearest-neighbor graph over a shared embedding space.

Nodes are the top frequency-ranked terms of each side (mapped source rows
and target rows); every node gains undirected edges to its k nearest
neighbors by cosine among all nodes. Degrees can exceed k through reciprocal
additions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import CrosslexError

SOURCE, TARGET = 0, 1


@dataclass
class KnnGraph:
    labels: np.ndarray            # (n,) 0 = source node, 1 = target node
    edges: list[tuple[int, int]]  # undirected, i < j, deduplicated
    k_graph: int
    terms: list[str]

    @property
    def n_nodes(self) -> int:
        return int(self.labels.shape[0])


def build_knn_graph(
    mapped_source: np.ndarray,
    target: np.ndarray,
    k_graph: int = 10,
    node_cap: int = 2000,
    source_terms: list[str] | None = None,
    target_terms: list[str] | None = None,
) -> KnnGraph:
    """Both matrices must already live in the shared space; rows are taken
    top-down (frequency order) up to ``node_cap`` per side."""
    a = np.asarray(mapped_source, dtype=np.float64)[:node_cap]
    b = np.asarray(target, dtype=np.float64)[:node_cap]
    points = np.vstack([a, b])
    norms = np.linalg.norm(points, axis=1, keepdims=True)
    if (norms == 0).any():
        raise CrosslexError("zero rows cannot enter the neighbor graph")
    points = points / norms
    n = points.shape[0]
    if k_graph >= n:
        raise CrosslexError(f"k_graph={k_graph} needs at least {k_graph + 1} nodes, have {n}")

    labels = np.concatenate([np.zeros(a.shape[0], dtype=np.int8), np.ones(b.shape[0], dtype=np.int8)])
    sim = points @ points.T
    np.fill_diagonal(sim, -np.inf)
    edge_set: set[tuple[int, int]] = set()
    for i in range(n):
        order = np.argsort(-sim[i], kind="stable")[:k_graph]
        for j in order:
            edge_set.add((i, int(j)) if i < j else (int(j), i))

    terms = list(source_terms[: a.shape[0]] if source_terms else (f"s{i}" for i in range(a.shape[0])))
    terms += list(target_terms[: b.shape[0]] if target_terms else (f"t{i}" for i in range(b.shape[0])))
    return KnnGraph(labels=labels, edges=sorted(edge_set), k_graph=k_graph, terms=terms)
