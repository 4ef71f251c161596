"""Normalized modularity of a two-label neighbor graph.

With e_i the fraction of edges internal to label i and a_i label i's share
of edge endpoints, modularity is (e_s - a_s^2) + (e_t - a_t^2), normalized
by its maximum 1 - (a_s^2 + a_t^2). A high value means the two domains form
separate similarity clusters in the shared space (poor mixing); lower means
better alignment.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CrosslexError
from .knn_graph import SOURCE, TARGET, KnnGraph


@dataclass
class ModularityReport:
    intra_fraction_source: float   # e_s
    intra_fraction_target: float   # e_t
    degree_share_source: float     # a_s
    degree_share_target: float     # a_t
    modularity: float              # Q
    normalized_modularity: float   # Q_norm in [-1, 1]
    k_graph: int
    nodes_source: int
    nodes_target: int
    n_edges: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def modularity(graph: KnnGraph) -> ModularityReport:
    if not graph.edges:
        raise CrosslexError("graph has no edges")
    labels = graph.labels
    present = set(int(v) for v in labels)
    if present != {SOURCE, TARGET}:
        raise CrosslexError("both domain labels must appear in the graph")

    n_edges = len(graph.edges)
    intra = [0, 0]
    endpoint = [0, 0]
    for i, j in graph.edges:
        li, lj = int(labels[i]), int(labels[j])
        endpoint[li] += 1
        endpoint[lj] += 1
        if li == lj:
            intra[li] += 1

    e_s = intra[SOURCE] / n_edges
    e_t = intra[TARGET] / n_edges
    a_s = endpoint[SOURCE] / (2 * n_edges)
    a_t = endpoint[TARGET] / (2 * n_edges)
    q = (e_s - a_s**2) + (e_t - a_t**2)
    denom = 1.0 - (a_s**2 + a_t**2)
    if denom == 0.0:
        raise CrosslexError("one label holds every edge endpoint; modularity undefined")
    q_norm = q / denom
    return ModularityReport(
        intra_fraction_source=e_s,
        intra_fraction_target=e_t,
        degree_share_source=a_s,
        degree_share_target=a_t,
        modularity=q,
        normalized_modularity=q_norm,
        k_graph=graph.k_graph,
        nodes_source=int((labels == SOURCE).sum()),
        nodes_target=int((labels == TARGET).sum()),
        n_edges=n_edges,
    )
