"""Sentence-encoder interface, declared for a future contextual pipeline.

No encoder ships with this package (a pretrained transformer is out of
scope). A plug-in implementing this protocol would enable a sentence-level
pipeline: encode the query term and every candidate context sentence, rank
sentences by encoder similarity, and label each retrieved sentence with the
in-sentence word closest to the query under a general-purpose word-embedding
model. That labeling rule is documented here for the plug-in author but is
intentionally unimplemented.
"""

from __future__ import annotations

from typing import Protocol

import numpy as np


class SentenceEncoder(Protocol):
    def encode(self, sentences: list[str]) -> np.ndarray:
        """Return one embedding row per input sentence."""
        ...
