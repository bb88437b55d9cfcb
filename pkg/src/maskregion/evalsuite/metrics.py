"""Label-level metrics: semantic similarity, word-set IoU, vocabulary matching."""

from __future__ import annotations

import string
from typing import FrozenSet, List, Sequence, Tuple

from ..embeddings import EmbeddingTable, cosine
from ..errors import InvalidReferenceError, UnknownLabelError

_PUNCT_TABLE = str.maketrans({c: " " for c in string.punctuation})


def normalize_words(text: str) -> FrozenSet[str]:
    """Lowercase, strip punctuation, whitespace-split, deduplicate."""
    return frozenset(text.lower().translate(_PUNCT_TABLE).split())


def semantic_similarity(pred: str, gt: str, table: EmbeddingTable) -> float:
    """Cosine similarity of the two label embeddings, clamped to [0, 1]."""
    raw = cosine(table.vector(pred), table.vector(gt))
    return min(max(raw, 0.0), 1.0)


def semantic_similarity_raw(pred: str, gt: str, table: EmbeddingTable) -> float:
    """Unclamped cosine, retained for per-sample reports."""
    return cosine(table.vector(pred), table.vector(gt))


def semantic_iou(pred: str, gt: str) -> float:
    """Word-set intersection over union between prediction and ground truth."""
    gt_words = normalize_words(gt)
    if not gt_words:
        raise InvalidReferenceError("empty ground-truth label")
    pred_words = normalize_words(pred)
    union = pred_words | gt_words
    return len(pred_words & gt_words) / len(union)


def vocab_match(response: str, vocab: Sequence[str], table: EmbeddingTable) -> str:
    """Vocabulary class with the highest embedding cosine; ties to lowest index."""
    if not vocab:
        raise ValueError("vocab must be non-empty")
    resp_vec = table.vector(response)
    best: Tuple[float, int] = (-2.0, -1)
    for i, label in enumerate(vocab):
        score = cosine(resp_vec, table.vector(label))
        if score > best[0]:
            best = (score, i)
    return vocab[best[1]]


def aggregate_percent(scores: List[float]) -> float:
    """Mean of per-sample scores reported as a percentage."""
    if not scores:
        raise ValueError("no scores to aggregate")
    return 100.0 * sum(scores) / len(scores)
