"""Topic extraction by collapsed Gibbs sampling, and topical-term salience.

Documents are papers (title plus body token bags). One sweep reassigns every
token once; total topic-term counts are checked against the corpus token
count after each sweep. A fixed seed makes runs identical.

Salience ranks a term by max over topics of
p(term | topic) * (p(term | topic) / p(term | corpus)), probability times
distinctiveness, so topical vocabulary outranks evenly-spread vocabulary.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numba import njit

from ..corpus.vocab import Vocabulary
from ..errors import CrosslexError

log = logging.getLogger(__name__)

_LCG_MULT = np.uint64(25214903917)
_LCG_ADD = np.uint64(11)


@dataclass
class TopicModel:
    topic_term_counts: np.ndarray  # (K, V) int64
    doc_topic_counts: np.ndarray   # (D, K) int64
    alpha: float
    beta: float
    vocab: Vocabulary
    n_tokens: int
    seed: int

    @property
    def num_topics(self) -> int:
        return int(self.topic_term_counts.shape[0])

    def topic_term_probs(self) -> np.ndarray:
        """p(term | topic), smoothed."""
        counts = self.topic_term_counts.astype(np.float64)
        v = counts.shape[1]
        return (counts + self.beta) / (counts.sum(axis=1, keepdims=True) + v * self.beta)

    def corpus_term_probs(self) -> np.ndarray:
        totals = self.topic_term_counts.sum(axis=0).astype(np.float64)
        return totals / totals.sum()

    def top_terms(self, topic: int, n: int = 10) -> list[str]:
        probs = self.topic_term_probs()[topic]
        order = np.argsort(-probs, kind="stable")[:n]
        return [self.vocab.tokens[i] for i in order]


@njit(cache=True)
def _gibbs_sweep(word_ids, doc_ids, z, ckw, ck, cdk, alpha, beta, state):
    n_topics, n_vocab = ckw.shape
    probs = np.empty(n_topics, dtype=np.float64)
    for t in range(word_ids.shape[0]):
        w = word_ids[t]
        d = doc_ids[t]
        old = z[t]
        ckw[old, w] -= 1
        ck[old] -= 1
        cdk[d, old] -= 1

        total = 0.0
        for j in range(n_topics):
            p = (ckw[j, w] + beta) / (ck[j] + n_vocab * beta) * (cdk[d, j] + alpha)
            total += p
            probs[j] = total
        state = state * _LCG_MULT + _LCG_ADD
        r = (np.float64(state >> np.uint64(16) & np.uint64(0xFFFFFFF)) / np.float64(0x10000000)) * total
        new = 0
        while new < n_topics - 1 and probs[new] < r:
            new += 1

        z[t] = new
        ckw[new, w] += 1
        ck[new] += 1
        cdk[d, new] += 1
    return state


def paper_token_bags(corpus, vocab: Vocabulary) -> tuple[np.ndarray, np.ndarray, int]:
    """Flatten the corpus into parallel (word id, doc id) arrays, one doc per
    paper, dropping out-of-vocabulary tokens."""
    doc_of_paper = {p.paper_id: i for i, p in enumerate(corpus.papers)}
    word_ids: list[int] = []
    doc_ids: list[int] = []
    for sent in corpus.sentences:
        d = doc_of_paper[sent.paper_id]
        for tok in sent.tokens:
            w = vocab.index.get(tok)
            if w is not None:
                word_ids.append(w)
                doc_ids.append(d)
    return (
        np.asarray(word_ids, dtype=np.int32),
        np.asarray(doc_ids, dtype=np.int32),
        len(corpus.papers),
    )


def lda_train(
    corpus,
    vocab: Vocabulary,
    num_topics: int = 20,
    alpha: float | None = None,
    beta: float = 0.01,
    gibbs_iterations: int = 1000,
    seed: int = 0,
) -> TopicModel:
    if alpha is None:
        alpha = 50.0 / num_topics
    word_ids, doc_ids, n_docs = paper_token_bags(corpus, vocab)
    if word_ids.size == 0:
        raise CrosslexError("no in-vocabulary tokens to model")
    if n_docs < num_topics:
        log.warning("only %d documents for %d topics; proceeding", n_docs, num_topics)

    # seeded random topic assignment (python ints wrap via the mask)
    tmp = (seed * 2 + 1) & 0xFFFFFFFFFFFFFFFF
    z = np.empty(word_ids.shape[0], dtype=np.int32)
    for t in range(z.shape[0]):
        tmp = (tmp * 25214903917 + 11) & 0xFFFFFFFFFFFFFFFF
        z[t] = (tmp >> 16) % num_topics
    state = np.uint64(tmp)

    ckw = np.zeros((num_topics, len(vocab)), dtype=np.int64)
    ck = np.zeros(num_topics, dtype=np.int64)
    cdk = np.zeros((n_docs, num_topics), dtype=np.int64)
    for t in range(z.shape[0]):
        ckw[z[t], word_ids[t]] += 1
        ck[z[t]] += 1
        cdk[doc_ids[t], z[t]] += 1

    n_tokens = int(word_ids.shape[0])
    for sweep in range(gibbs_iterations):
        # re-wrap: the kernel boxes its uint64 state as a Python int
        state = np.uint64(_gibbs_sweep(word_ids, doc_ids, z, ckw, ck, cdk, alpha, beta, state))
        if int(ckw.sum()) != n_tokens:
            raise CrosslexError(f"token count drifted after sweep {sweep}")

    return TopicModel(
        topic_term_counts=ckw,
        doc_topic_counts=cdk,
        alpha=alpha,
        beta=beta,
        vocab=vocab,
        n_tokens=n_tokens,
        seed=seed,
    )


def salient_terms(model: TopicModel, n: int = 100) -> list[str]:
    """Top-n topical terms: probability-times-distinctiveness, ties broken by
    vocabulary index."""
    phi = model.topic_term_probs()
    p_corpus = model.corpus_term_probs()
    with np.errstate(divide="ignore", invalid="ignore"):
        scores = np.max(phi * (phi / np.maximum(p_corpus, 1e-300)[None, :]), axis=0)
    order = np.argsort(-scores, kind="stable")[: min(n, len(model.vocab))]
    return [model.vocab.tokens[i] for i in order]
