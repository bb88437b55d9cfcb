"""Label -> vector table backing semantic similarity, mining, and vocabulary matching."""

from __future__ import annotations

from typing import Dict, Iterable, Sequence

import numpy as np

from .containers import read_embeddings
from .errors import UnknownLabelError


class EmbeddingTable:
    """Immutable map from unique labels to real vectors of a shared dimension."""

    def __init__(self, labels: Sequence[str], vectors):
        self.labels = list(labels)
        self.vectors = np.asarray(vectors, dtype=np.float64)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.labels):
            raise ValueError("vectors must be (len(labels), dim)")
        self._index: Dict[str, int] = {l: i for i, l in enumerate(self.labels)}

    @classmethod
    def load(cls, path) -> "EmbeddingTable":
        labels, vectors = read_embeddings(path)
        return cls(labels, vectors)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self._index

    @property
    def dim(self):
        return self.vectors.shape[1]

    def vector(self, label: str) -> np.ndarray:
        try:
            return self.vectors[self._index[label]]
        except KeyError:
            raise UnknownLabelError(f"label {label!r} not in table") from None


def cosine(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))
