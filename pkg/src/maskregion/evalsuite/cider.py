"""TF-IDF n-gram consensus metric for region captions.

Per image: candidate and mean-reference TF-IDF vectors are compared by cosine
for each n in 1..4; the per-image score is the average over n, scaled by 10.
Document frequency is corpus-level, counted over reference sets.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Dict, List, Sequence, Tuple

from ..errors import InvalidCorpusError
from .metrics import _PUNCT_TABLE

MAX_N = 4


def tokenize(text: str) -> List[str]:
    return text.lower().translate(_PUNCT_TABLE).split()


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _doc_freq(references: Dict[str, Sequence[str]]) -> Tuple[Dict[tuple, int], int]:
    df: Dict[tuple, int] = {}
    for refs in references.values():
        seen = set()
        for ref in refs:
            toks = tokenize(ref)
            for n in range(1, MAX_N + 1):
                seen.update(ngram_counts(toks, n))
        for g in seen:
            df[g] = df.get(g, 0) + 1
    return df, len(references)


def _tfidf(counts: Counter, df: Dict[tuple, int], n_images: int) -> Dict[tuple, float]:
    return {
        g: c * math.log(n_images / max(1.0, df.get(g, 0)))
        for g, c in counts.items()
    }


def _cosine_sparse(a: Dict[tuple, float], b: Dict[tuple, float]) -> float:
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    if na == 0.0 or nb == 0.0:
        return 0.0
    dot = sum(v * b.get(g, 0.0) for g, v in a.items())
    return dot / (na * nb)


def cider_scores(candidates: Dict[str, str],
                 references: Dict[str, Sequence[str]]) -> Dict[str, float]:
    """Per-image consensus scores (average over n in 1..4, x10)."""
    if set(candidates) != set(references):
        raise InvalidCorpusError("candidate and reference image sets differ")
    if len(references) < 2:
        raise InvalidCorpusError("need >= 2 images for IDF statistics")
    for image, refs in references.items():
        if not refs:
            raise InvalidCorpusError(f"image {image!r} has no references")
    df, n_images = _doc_freq(references)
    scores: Dict[str, float] = {}
    for image, cand in candidates.items():
        cand_toks = tokenize(cand)
        refs_toks = [tokenize(r) for r in references[image]]
        total = 0.0
        for n in range(1, MAX_N + 1):
            cand_vec = _tfidf(ngram_counts(cand_toks, n), df, n_images)
            # mean of reference TF-IDF vectors
            mean_vec: Dict[tuple, float] = {}
            for toks in refs_toks:
                for g, v in _tfidf(ngram_counts(toks, n), df, n_images).items():
                    mean_vec[g] = mean_vec.get(g, 0.0) + v
            k = len(refs_toks)
            mean_vec = {g: v / k for g, v in mean_vec.items()}
            total += _cosine_sparse(cand_vec, mean_vec)
        scores[image] = 10.0 * total / MAX_N
    return scores


def cider(candidates: Dict[str, str],
          references: Dict[str, Sequence[str]]) -> float:
    """Mean per-image score; percent scaling is left to the report layer."""
    scores = cider_scores(candidates, references)
    return sum(scores.values()) / len(scores)
