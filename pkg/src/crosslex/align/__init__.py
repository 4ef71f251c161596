from .normalize import DEFAULT_RECIPE, normalize_matrix, normalize_space
from .dictionary import SeedDictionary, seed_identical
from .procrustes import procrustes, procrustes_matrix, pair_loss
from .csls import SelfLearnConfig, csls_scores, induce_dictionary, mutual_nn_pairs
from .selflearn import align_selflearn, similarity_signature_pairs
from .refine import align_procrustes_refine
from .mapping import AlignmentMap, map_term, ORTHOGONALITY_TOL

__all__ = [
    "DEFAULT_RECIPE",
    "normalize_matrix",
    "normalize_space",
    "SeedDictionary",
    "seed_identical",
    "procrustes",
    "procrustes_matrix",
    "pair_loss",
    "SelfLearnConfig",
    "csls_scores",
    "induce_dictionary",
    "mutual_nn_pairs",
    "align_selflearn",
    "similarity_signature_pairs",
    "align_procrustes_refine",
    "AlignmentMap",
    "map_term",
    "ORTHOGONALITY_TOL",
]
