from .space import EmbeddingSpace, cosine, nearest_neighbors, save_space, load_space
from .trainer import (
    TrainConfig,
    train_skipgram,
    seeded_init,
    sigmoid_table,
    negative_table,
    keep_scores,
    encode_corpus,
    subword_rows,
)

__all__ = [
    "EmbeddingSpace",
    "cosine",
    "nearest_neighbors",
    "save_space",
    "load_space",
    "TrainConfig",
    "train_skipgram",
    "seeded_init",
    "sigmoid_table",
    "negative_table",
    "keep_scores",
    "encode_corpus",
    "subword_rows",
]
