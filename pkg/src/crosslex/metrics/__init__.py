from .knn_graph import KnnGraph, build_knn_graph, SOURCE, TARGET
from .modularity import ModularityReport, modularity
from .lda import TopicModel, lda_train, salient_terms, paper_token_bags
from .salience import SalienceReport, SalienceEntry, salient_cosine, best_match_cosines
from .stats import pearson
from .ratings import (
    RatingRecord,
    RatingStore,
    ExportRow,
    record_rating,
    export_rows,
    export_csv,
    potential_hit_terms,
)
from .report import evaluate_pair, report_csv_rows
from .plots import modularity_figure, salience_figure

__all__ = [
    "KnnGraph",
    "build_knn_graph",
    "SOURCE",
    "TARGET",
    "ModularityReport",
    "modularity",
    "TopicModel",
    "lda_train",
    "salient_terms",
    "paper_token_bags",
    "SalienceReport",
    "SalienceEntry",
    "salient_cosine",
    "best_match_cosines",
    "pearson",
    "RatingRecord",
    "RatingStore",
    "ExportRow",
    "record_rating",
    "export_rows",
    "export_csv",
    "potential_hit_terms",
    "evaluate_pair",
    "report_csv_rows",
    "modularity_figure",
    "salience_figure",
]
