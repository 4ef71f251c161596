"""Per-pair alignment-quality report assembly."""

from __future__ import annotations

from ..align.mapping import AlignmentMap
from ..align.normalize import normalize_matrix
from .knn_graph import build_knn_graph
from .modularity import modularity
from .salience import salient_cosine


def evaluate_pair(
    alignment: AlignmentMap,
    source_space,
    target_space,
    salient: list[str],
    k_graph: int = 10,
    node_cap: int = 2000,
) -> dict:
    """Normalized modularity over the cross-domain neighbor graph plus
    salient-term cosine, as one JSON-ready report."""
    xs = normalize_matrix(source_space.matrix, alignment.recipe)
    xt = normalize_matrix(target_space.matrix, alignment.recipe)
    mapped = alignment.apply(xs)

    graph = build_knn_graph(
        mapped,
        xt,
        k_graph=k_graph,
        node_cap=node_cap,
        source_terms=source_space.vocab.tokens,
        target_terms=target_space.vocab.tokens,
    )
    mod = modularity(graph)
    sal = salient_cosine(alignment, source_space, target_space, salient)

    return {
        "source": alignment.source_domain,
        "target": alignment.target_domain,
        "method": alignment.method,
        "modularity": mod.to_json(),
        "salience": sal.to_json(),
        "params": {"k_graph": k_graph, "node_cap": node_cap, "n_salient": len(salient)},
        "alignment_warning": alignment.warning,
    }


def report_csv_rows(reports: list[dict]) -> str:
    """Flat export: one line per (source, target, method)."""
    lines = ["source,target,method,normalized_modularity,mean_salient_cosine"]
    for rep in reports:
        lines.append(
            f"{rep['source']},{rep['target']},{rep['method']},"
            f"{rep['modularity']['normalized_modularity']:.6f},"
            f"{rep['salience']['mean_normalized']:.6f}"
        )
    return "\n".join(lines) + "\n"
