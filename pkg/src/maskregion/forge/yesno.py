"""Yes/No robustness records and short-form question suffixing."""

from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np

from ..embeddings import EmbeddingTable
from ..errors import NoNegativeAvailableError, UnknownLabelError
from ..masks import decode_rle, mask_stats
from ..sequencer import Conversation, Turn
from .mining import mine_class_negative, mine_spatial_negative
from .templates import (
    NEGATIVE_ANSWERS,
    POSITIVE_ANSWER,
    SHORT_FORM_SUFFIX_PHRASE,
    SHORT_FORM_SUFFIXES,
    YES_NO_QUESTION_TEMPLATES,
)
from .types import InstructionRecord, RegionAnnotation

YESNO_MODES = ("positive", "spatial_negative", "class_negative")


def apply_short_form(question: str, suffix: str = SHORT_FORM_SUFFIX_PHRASE) -> str:
    """Append the short-form response suffix; idempotent."""
    if not question:
        raise ValueError("question must be non-empty")
    if suffix not in SHORT_FORM_SUFFIXES:
        raise ValueError(f"unrecognized short-form suffix {suffix!r}")
    if any(question.endswith(s) for s in SHORT_FORM_SUFFIXES):
        return question
    return question + suffix


def region_stats(regions: Sequence[RegionAnnotation]):
    """(MaskStats, category) pairs for spatial mining."""
    return [(mask_stats(decode_rle(r.mask)), r.category) for r in regions]


def _make_record(image_ref: str, region: RegionAnnotation, asked_category: str,
                 answer: str, rng) -> InstructionRecord:
    template = YES_NO_QUESTION_TEMPLATES[int(rng.integers(len(YES_NO_QUESTION_TEMPLATES)))]
    question = template.replace("<category>", asked_category)
    conv = Conversation((
        Turn("human", question, (region.region_id,)),
        Turn("assistant", answer, ()),
    ))
    return InstructionRecord(image_ref, (region,), conv, "yes_no")


def build_yesno_records(regions: Sequence[RegionAnnotation], mode: str,
                        template_seed: int, table: Optional[EmbeddingTable] = None,
                        image_ref: str = "") -> List[InstructionRecord]:
    """One record per region in the requested mode.

    positive asks the true category and affirms; the negative modes substitute
    a mined category and deny.  Miner preconditions propagate.
    """
    if mode not in YESNO_MODES:
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(template_seed)
    stats = region_stats(regions) if mode == "spatial_negative" else None
    records = []
    for i, region in enumerate(regions):
        if mode == "positive":
            asked, answer = region.category, POSITIVE_ANSWER
        elif mode == "spatial_negative":
            _, asked = mine_spatial_negative(i, stats)
            answer = NEGATIVE_ANSWERS[int(rng.integers(len(NEGATIVE_ANSWERS)))]
        else:
            if table is None:
                raise UnknownLabelError("class mining requires an embedding table")
            asked = mine_class_negative(region.category, table,
                                        int(rng.integers(2**31)))
            answer = NEGATIVE_ANSWERS[int(rng.integers(len(NEGATIVE_ANSWERS)))]
        records.append(_make_record(image_ref, region, asked, answer, rng))
    return records


def build_balanced_yesno(regions: Sequence[RegionAnnotation], template_seed: int,
                         table: Optional[EmbeddingTable] = None,
                         image_ref: str = "") -> List[InstructionRecord]:
    """Exactly one positive and one negative record per minable region.

    Spatial mining is preferred; class mining is the fallback.  Regions with no
    minable negative are dropped entirely so positives and negatives stay 50/50.
    """
    rng = np.random.default_rng(template_seed)
    stats = region_stats(regions)
    records = []
    for i, region in enumerate(regions):
        try:
            _, asked = mine_spatial_negative(i, stats)
        except NoNegativeAvailableError:
            if table is None:
                continue
            try:
                asked = mine_class_negative(region.category, table,
                                            int(rng.integers(2**31)))
            except UnknownLabelError:
                continue
        answer = NEGATIVE_ANSWERS[int(rng.integers(len(NEGATIVE_ANSWERS)))]
        records.append(_make_record(image_ref, region, region.category,
                                    POSITIVE_ANSWER, rng))
        records.append(_make_record(image_ref, region, asked, answer, rng))
    return records
