"""Robust stochastic self-learning alignment.

Alternates closed-form Procrustes on the current dictionary with CSLS
dictionary induction under stochastic pair dropout. When the mean induced
CSLS objective stalls, the keep probability is annealed upward; the loop
terminates once it reaches 1 while stalled, or at the iteration cap
(returning the best map seen, flagged as non-converged).
"""

from __future__ import annotations

import logging

import numpy as np

from ..errors import AlignmentError
from .csls import SelfLearnConfig, _topk_mean, induce_dictionary
from .dictionary import SeedDictionary, seed_identical
from .mapping import AlignmentMap
from .normalize import DEFAULT_RECIPE, normalize_matrix
from .procrustes import procrustes_matrix

log = logging.getLogger(__name__)


def _unit(rows: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(rows, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return rows / norms


def similarity_signature_pairs(
    source: np.ndarray, target: np.ndarray, limit: int = 2000, csls_k: int = 10
) -> SeedDictionary:
    """Fully unsupervised initialization: words with similar positions in
    their own space have similar sorted similarity-row signatures, so pair
    each frequent source word with the target word whose signature is
    nearest."""
    m = min(limit, source.shape[0], target.shape[0])
    a = _unit(np.sort(source[:m] @ source[:m].T, axis=1))
    b = _unit(np.sort(target[:m] @ target[:m].T, axis=1))
    sim = a @ b.T
    sim = sim - _topk_mean(sim, csls_k)[:, None] / 2.0 - _topk_mean(sim.T, csls_k)[None, :] / 2.0
    fwd = np.argmax(sim, axis=1)
    bwd = np.argmax(sim, axis=0)
    pairs = sorted({(int(i), int(j)) for i, j in enumerate(fwd)} | {(int(i), int(j)) for j, i in enumerate(bwd)})
    return SeedDictionary(pairs=pairs, origin="induced")


def align_selflearn(
    source_space,
    target_space,
    config: SelfLearnConfig | None = None,
    seed_dict: SeedDictionary | None = None,
    recipe=DEFAULT_RECIPE,
) -> AlignmentMap:
    config = config or SelfLearnConfig()
    config.validate()
    xs = normalize_matrix(source_space.matrix, recipe)
    xt = normalize_matrix(target_space.matrix, recipe)
    cut_s = min(config.vocab_cutoff, xs.shape[0])
    cut_t = min(config.vocab_cutoff, xt.shape[0])

    if seed_dict is not None:
        current = seed_dict
        origin = seed_dict.origin
    else:
        try:
            current = seed_identical(source_space.vocab, target_space.vocab)
            origin = "identical_tokens"
        except AlignmentError:
            log.info("no shared tokens; falling back to similarity-signature initialization")
            current = similarity_signature_pairs(xs, xt, 2000, config.csls_k)
            origin = current.origin

    rng = np.random.default_rng(config.seed)
    keep = config.keep_start
    best_objective = -np.inf
    best_rotation = np.eye(xs.shape[1])
    iteration_log: list[dict] = []
    converged = False

    for iteration in range(1, config.max_iterations + 1):
        rotation = procrustes_matrix(xs, xt, current)
        mapped = _unit(xs[:cut_s] @ rotation.T)
        induced, objective = induce_dictionary(
            mapped, _unit(xt[:cut_t]), config, keep_probability=keep, rng=rng
        )
        stalled = (objective - best_objective) < config.stall_tolerance
        if objective > best_objective:
            best_objective = objective
            best_rotation = rotation
        iteration_log.append(
            {
                "iteration": iteration,
                "objective": float(objective),
                "best_objective": float(best_objective),
                "keep_probability": keep,
                "dict_size": len(induced),
            }
        )
        if stalled:
            keep = min(1.0, keep * config.anneal)
            if keep >= 1.0:
                converged = True
                break
        current = induced

    if not converged:
        log.warning("self-learning hit max_iterations=%d without stalling at keep=1", config.max_iterations)

    return AlignmentMap(
        source_domain=source_space.meta.get("domain", ""),
        target_domain=target_space.meta.get("domain", ""),
        rotation=best_rotation,
        recipe=list(recipe),
        method="self_learn",
        iteration_log=iteration_log,
        seed_origin=origin,
        warning=not converged,
        meta={"config": config.to_json(), "objective": float(best_objective)},
    )
