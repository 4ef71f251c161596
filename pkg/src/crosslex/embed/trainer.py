"""Skipgram-with-negative-sampling trainer.

Follows the reference implementation conventions for this family of models:
unigram^0.75 negative-sampling table, dynamic context window (uniform
1..window), linear learning-rate decay, sigmoid via a 512-bin lookup table
clamped at +/-6, and a 48-bit linear-congruential RNG so that a single-worker
run with a fixed seed is bit-reproducible. Multiple workers apply updates to
the shared matrices without locks; lost updates are tolerated by design, and
bit-determinism is only promised at workers=1.

Optional subword mode represents each word as its own row plus hashed
character n-gram rows; the emitted word vector is exactly the sum of those
rows.
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from ..corpus.vocab import Vocabulary
from ..errors import TrainingError
from .space import EmbeddingSpace

log = logging.getLogger(__name__)

SIGMOID_BINS = 512
SIGMOID_CLAMP = 6.0
NEG_TABLE_SIZE = 1_000_000

_LCG_MULT = np.uint64(25214903917)
_LCG_ADD = np.uint64(11)


@dataclass
class TrainConfig:
    k: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 10
    initial_lr: float = 0.025
    min_count: int = 1
    subsample_t: float = 1e-4
    seed: int = 1
    workers: int = 1
    subword: bool = False
    ngram_min: int = 3
    ngram_max: int = 6
    buckets: int = 100_000

    def validate(self) -> None:
        for name in ("k", "window", "negatives", "min_count", "seed", "workers", "buckets"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if not (0.0 < self.initial_lr < 1.0):
            raise ValueError("initial_lr must be in (0, 1)")
        if self.subword and not (0 < self.ngram_min <= self.ngram_max):
            raise ValueError("need 0 < ngram_min <= ngram_max")

    def to_json(self) -> dict:
        return dict(self.__dict__)


def seeded_init(n_rows: int, k: int, seed: int) -> np.ndarray:
    """Input-matrix initialization: uniform in (-0.5/k, 0.5/k), reproducible."""
    rng = np.random.default_rng(seed)
    return ((rng.random((n_rows, k), dtype=np.float32) - 0.5) / k).astype(np.float32)


def sigmoid_table() -> np.ndarray:
    x = (np.arange(SIGMOID_BINS, dtype=np.float64) / SIGMOID_BINS * 2.0 - 1.0) * SIGMOID_CLAMP
    return (1.0 / (1.0 + np.exp(-x))).astype(np.float64)


def negative_table(frequencies: list[int], size: int = NEG_TABLE_SIZE) -> np.ndarray:
    """Unigram^0.75 sampling table: token i occupies a share of slots
    proportional to frequency_i^0.75."""
    weights = np.asarray(frequencies, dtype=np.float64) ** 0.75
    cum = np.cumsum(weights)
    cum /= cum[-1]
    positions = (np.arange(size, dtype=np.float64) + 0.5) / size
    return np.searchsorted(cum, positions).astype(np.int32)


def encode_corpus(corpus, vocab: Vocabulary) -> tuple[np.ndarray, np.ndarray]:
    """Flatten sentences into one int32 token-id stream with sentence offsets.
    Out-of-vocabulary tokens are dropped."""
    ids: list[int] = []
    offsets = [0]
    for sent in corpus.sentences:
        for tok in sent.tokens:
            idx = vocab.index.get(tok)
            if idx is not None:
                ids.append(idx)
        offsets.append(len(ids))
    return np.asarray(ids, dtype=np.int32), np.asarray(offsets, dtype=np.int64)


def _fnv1a(data: bytes) -> int:
    h = 2166136261
    for byte in data:
        h ^= byte
        h = (h * 16777619) & 0xFFFFFFFF
    return h


def subword_rows(token: str, n_vocab: int, ngram_min: int, ngram_max: int, buckets: int) -> list[int]:
    """Hashed n-gram row ids (offset past the word rows) for one token."""
    wrapped = f"<{token}>"
    rows = []
    for n in range(ngram_min, ngram_max + 1):
        if n > len(wrapped):
            break
        for i in range(len(wrapped) - n + 1):
            rows.append(n_vocab + _fnv1a(wrapped[i : i + n].encode("utf-8")) % buckets)
    return rows


def _input_row_csr(vocab: Vocabulary, config: TrainConfig) -> tuple[np.ndarray, np.ndarray]:
    """Per-word input rows: the word row itself, plus n-gram rows in subword
    mode, as a CSR (rows, offsets) pair."""
    rows: list[int] = []
    offsets = [0]
    for i, tok in enumerate(vocab.tokens):
        rows.append(i)
        if config.subword:
            rows.extend(subword_rows(tok, len(vocab), config.ngram_min, config.ngram_max, config.buckets))
        offsets.append(len(rows))
    return np.asarray(rows, dtype=np.int64), np.asarray(offsets, dtype=np.int64)


def keep_scores(frequencies: list[int], subsample_t: float) -> np.ndarray:
    """Per-token keep probability for frequent-word subsampling (>1 keeps
    always). Mirrors the classic (sqrt(f/t)+1)*t/f discount."""
    freq = np.asarray(frequencies, dtype=np.float64)
    total = freq.sum()
    if subsample_t <= 0 or total == 0:
        return np.full(len(freq), 2.0)
    f = freq / total
    return (np.sqrt(f / subsample_t) + 1.0) * (subsample_t / f)


@njit(cache=True, nogil=True)
def _sgns_epoch(
    tokens,
    offsets,
    sent_lo,
    sent_hi,
    syn0,
    syn1,
    input_rows,
    input_offsets,
    neg_table,
    keep,
    sig,
    window,
    negatives,
    initial_lr,
    progress_base,
    progress_scale,
    progress_total,
    rng_state,
):
    """One epoch over sentences [sent_lo, sent_hi). Returns
    (loss_sum, pair_count, tokens_seen, rng_state)."""
    k = syn0.shape[1]
    table_len = neg_table.shape[0]
    state = rng_state
    loss = 0.0
    pairs = 0
    seen = 0
    hidden = np.empty(k, dtype=np.float32)
    grad = np.empty(k, dtype=np.float32)
    sent = np.empty(1024, dtype=np.int32)

    for s in range(sent_lo, sent_hi):
        lo = offsets[s]
        hi = offsets[s + 1]
        # frequent-word subsampling, redrawn each epoch
        n = 0
        for t in range(lo, hi):
            w = tokens[t]
            seen += 1
            state = state * _LCG_MULT + _LCG_ADD
            frac = np.float64(state >> np.uint64(16) & np.uint64(0xFFFF)) / 65536.0
            if keep[w] >= frac:
                if n < sent.shape[0]:
                    sent[n] = w
                    n += 1
        if n < 2:
            continue

        progress = progress_base + np.float64(seen) * progress_scale
        lr = initial_lr * (1.0 - progress / progress_total)
        if lr < initial_lr * 1e-4:
            lr = initial_lr * 1e-4

        for i in range(n):
            center = sent[i]
            state = state * _LCG_MULT + _LCG_ADD
            reach = 1 + np.int64(state >> np.uint64(16)) % window
            for j in range(max(0, i - reach), min(n, i + reach + 1)):
                if j == i:
                    continue
                # input = context word, predicted = center word
                wi = sent[j]
                r0 = input_offsets[wi]
                r1 = input_offsets[wi + 1]
                for c in range(k):
                    hidden[c] = 0.0
                for r in range(r0, r1):
                    row = input_rows[r]
                    for c in range(k):
                        hidden[c] += syn0[row, c]
                for c in range(k):
                    grad[c] = 0.0

                for d in range(negatives + 1):
                    if d == 0:
                        target = center
                        label = 1.0
                    else:
                        state = state * _LCG_MULT + _LCG_ADD
                        target = neg_table[np.int64(state >> np.uint64(16)) % table_len]
                        if target == center:
                            continue
                        label = 0.0
                    f = 0.0
                    for c in range(k):
                        f += hidden[c] * syn1[target, c]
                    if f >= SIGMOID_CLAMP:
                        p = 1.0 - 1e-7
                    elif f <= -SIGMOID_CLAMP:
                        p = 1e-7
                    else:
                        p = sig[np.int64((f + SIGMOID_CLAMP) * (SIGMOID_BINS / (2.0 * SIGMOID_CLAMP)))]
                    g = np.float32((label - p) * lr)
                    if label == 1.0:
                        loss += -np.log(p)
                    else:
                        loss += -np.log(1.0 - p)
                    for c in range(k):
                        grad[c] += g * syn1[target, c]
                    for c in range(k):
                        syn1[target, c] += g * hidden[c]
                pairs += 1
                for r in range(r0, r1):
                    row = input_rows[r]
                    for c in range(k):
                        syn0[row, c] += grad[c]
    return loss, pairs, seen, state


def train_skipgram(corpus, vocab: Vocabulary, config: TrainConfig) -> EmbeddingSpace:
    """Train an embedding space over a tokenized corpus.

    With workers=1 and a fixed seed the result is bit-reproducible;
    epochs=0 returns the seeded initialization untouched.
    """
    config.validate()
    if config.k > len(vocab):
        log.warning("k=%d exceeds |V|=%d; proceeding", config.k, len(vocab))

    tokens, offsets = encode_corpus(corpus, vocab)
    if tokens.size == 0:
        raise TrainingError(f"corpus {corpus.domain_id!r} has no in-vocabulary tokens")

    input_rows, input_offsets = _input_row_csr(vocab, config)
    n_input = len(vocab) + (config.buckets if config.subword else 0)
    syn0 = seeded_init(n_input, config.k, config.seed)
    syn1 = np.zeros((len(vocab), config.k), dtype=np.float32)
    neg_table = negative_table(vocab.frequencies)
    keep = keep_scores(vocab.frequencies, config.subsample_t)
    sig = sigmoid_table()

    n_sent = len(offsets) - 1
    total_tokens = int(tokens.size)
    progress_total = float(config.epochs * total_tokens + 1)

    bounds = np.linspace(0, n_sent, config.workers + 1).astype(np.int64)
    states = [np.uint64(config.seed + 1 + w) for w in range(config.workers)]
    chunk_tokens = [int(offsets[bounds[w + 1]] - offsets[bounds[w]]) for w in range(config.workers)]

    epoch_losses: list[float] = []
    started = time.perf_counter()
    for epoch in range(config.epochs):
        results = [None] * config.workers

        def run(w: int, epoch: int = epoch) -> None:
            # each worker estimates global progress from its own token count
            base = float(epoch * total_tokens + 0)
            scale = float(config.workers)
            out = _sgns_epoch(
                tokens, offsets, bounds[w], bounds[w + 1], syn0, syn1,
                input_rows, input_offsets, neg_table, keep, sig,
                config.window, config.negatives, config.initial_lr,
                base, scale, progress_total, states[w],
            )
            results[w] = out

        if config.workers == 1:
            run(0)
        else:
            threads = [threading.Thread(target=run, args=(w,)) for w in range(config.workers)]
            for t in threads:
                t.start()
            for t in threads:
                t.join()

        loss_sum = sum(r[0] for r in results)
        pair_count = sum(r[1] for r in results)
        for w in range(config.workers):
            # boxed as a Python int on return; re-wrap so the next call's
            # argument conversion cannot overflow int64
            states[w] = np.uint64(results[w][3])
        epoch_losses.append(loss_sum / max(pair_count, 1))

    if config.subword:
        matrix = np.zeros((len(vocab), config.k), dtype=np.float32)
        for i in range(len(vocab)):
            for r in input_rows[input_offsets[i] : input_offsets[i + 1]]:
                matrix[i] += syn0[r]
    else:
        matrix = syn0[: len(vocab)].copy()

    norms = np.linalg.norm(matrix, axis=1)
    if not np.isfinite(matrix).all() or (config.epochs > 0 and (norms == 0).any()):
        raise TrainingError("training produced zero or non-finite vectors")

    meta = {
        "config": config.to_json(),
        "seed": config.seed,
        "corpus_fingerprint": corpus.fingerprint(),
        "epoch_losses": epoch_losses,
        "wall_time_s": round(time.perf_counter() - started, 3),
        "chunk_tokens": chunk_tokens,
    }
    return EmbeddingSpace(vocab=vocab, matrix=matrix, meta=meta)
