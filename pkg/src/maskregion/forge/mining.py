"""Spatial- and class-aware negative category mining."""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

from ..embeddings import EmbeddingTable, cosine
from ..errors import InsufficientCandidatesError
from ..masks import nearest_region

TOP_K = 8


def rank_class_candidates(category: str, table: EmbeddingTable) -> list:
    """Other labels sorted by descending cosine to the query (ties by index)."""
    query = table.vector(category)
    scored = [
        (cosine(query, table.vectors[i]), -i, label)
        for i, label in enumerate(table.labels)
        if label != category
    ]
    scored.sort(reverse=True)
    return [label for _, _, label in scored]


def mine_class_negative(category: str, table: EmbeddingTable, rng_seed: int) -> str:
    """Uniform seeded pick among the top-8 labels most cosine-similar to the query."""
    if len(table) < TOP_K + 1:
        raise InsufficientCandidatesError(
            f"table has {len(table)} labels, need >= {TOP_K + 1}"
        )
    candidates = rank_class_candidates(category, table)[:TOP_K]
    rng = np.random.default_rng(rng_seed)
    return candidates[int(rng.integers(len(candidates)))]


def mine_spatial_negative(target_index: int, regions: Sequence) -> Tuple[int, str]:
    """Nearest differently-labeled region by centroid distance.

    regions is a list of (MaskStats, category); returns (index, category).
    """
    return nearest_region(target_index, regions)
