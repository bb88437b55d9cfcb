"""Region-understanding metrics: semantic similarity, semantic IoU, vocabulary
matching, caption consensus scoring, GT-mask recognition metrics, and the
LLM-judge ratio."""

from .metrics import normalize_words, semantic_iou, semantic_similarity, vocab_match
from .cider import cider, cider_scores
from .recognition import LabeledSegment, recognition_metrics
from .judge import JudgeResult, gpt_judge

__all__ = [
    "normalize_words", "semantic_iou", "semantic_similarity", "vocab_match",
    "cider", "cider_scores",
    "LabeledSegment", "recognition_metrics",
    "JudgeResult", "gpt_judge",
]
