"""Seeded Procrustes refinement.

Seeds from identically-spelled tokens, solves Procrustes once, then runs a
fixed number of rounds of {CSLS mutual-nearest-neighbor induction at keep
probability 1 -> Procrustes}. Zero rounds is plain seeded Procrustes.
"""

from __future__ import annotations

import numpy as np

from .csls import SelfLearnConfig, mutual_nn_pairs
from .dictionary import seed_identical
from .mapping import AlignmentMap
from .normalize import DEFAULT_RECIPE, normalize_matrix
from .procrustes import procrustes_matrix
from .selflearn import _unit


def align_procrustes_refine(
    source_space,
    target_space,
    rounds: int = 5,
    config: SelfLearnConfig | None = None,
    recipe=DEFAULT_RECIPE,
) -> AlignmentMap:
    config = config or SelfLearnConfig()
    xs = normalize_matrix(source_space.matrix, recipe)
    xt = normalize_matrix(target_space.matrix, recipe)
    cut_s = min(config.vocab_cutoff, xs.shape[0])
    cut_t = min(config.vocab_cutoff, xt.shape[0])
    target_cut = _unit(xt[:cut_t])

    seed = seed_identical(source_space.vocab, target_space.vocab)
    rotation = procrustes_matrix(xs, xt, seed)
    iteration_log = [{"round": 0, "dict_size": len(seed), "objective": None}]

    for rnd in range(1, rounds + 1):
        mapped = _unit(xs[:cut_s] @ rotation.T)
        induced = mutual_nn_pairs(mapped, target_cut, config.csls_k)
        if not induced.pairs:
            break
        rotation = procrustes_matrix(xs, xt, induced)
        sim = _unit(xs[:cut_s] @ rotation.T) @ target_cut.T
        idx = np.asarray(induced.pairs, dtype=np.int64)
        iteration_log.append(
            {
                "round": rnd,
                "dict_size": len(induced),
                "objective": float(sim[idx[:, 0], idx[:, 1]].mean()),
            }
        )

    return AlignmentMap(
        source_domain=source_space.meta.get("domain", ""),
        target_domain=target_space.meta.get("domain", ""),
        rotation=rotation,
        recipe=list(recipe),
        method="procrustes_refine",
        iteration_log=iteration_log,
        seed_origin="identical_tokens",
        warning=False,
        meta={"rounds": rounds, "config": config.to_json()},
    )
