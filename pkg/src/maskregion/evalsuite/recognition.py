"""Recognition metrics over ground-truth masks with predicted labels.

Because segments are GT masks, a segment matches iff its predicted category
equals the ground truth (match IoU 1), so panoptic quality reduces to
PQ_c = TP_c / (TP_c + FP_c/2 + FN_c/2), averaged over classes present.
mIoU is the per-class pixel IoU between predicted-as-c and gt-c unions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

import numpy as np

from ..errors import DisjointnessError
from ..masks import RleMask, decode_rle


@dataclass(frozen=True)
class LabeledSegment:
    mask: RleMask
    gt_category: str
    predicted_category: str


def _check_disjoint(segments: Sequence[LabeledSegment]):
    if not segments:
        return
    h, w = segments[0].mask.height, segments[0].mask.width
    occupancy = np.zeros((h, w), dtype=np.int32)
    for seg in segments:
        occupancy += decode_rle(seg.mask)
    if (occupancy > 1).any():
        raise DisjointnessError("masks within one image overlap")


def recognition_metrics(segments_by_image: Dict[str, Sequence[LabeledSegment]]):
    """Returns {"pq": percent, "miou": percent} plus per-class breakdowns."""
    tp: Dict[str, int] = {}
    fp: Dict[str, int] = {}
    fn: Dict[str, int] = {}
    inter_px: Dict[str, int] = {}
    union_px: Dict[str, int] = {}
    classes = set()

    for segments in segments_by_image.values():
        _check_disjoint(segments)
        if not segments:
            continue
        h, w = segments[0].mask.height, segments[0].mask.width
        gt_px: Dict[str, np.ndarray] = {}
        pred_px: Dict[str, np.ndarray] = {}
        for seg in segments:
            m = decode_rle(seg.mask)
            classes.add(seg.gt_category)
            classes.add(seg.predicted_category)
            gt_px.setdefault(seg.gt_category, np.zeros((h, w), bool))
            gt_px[seg.gt_category] |= m
            pred_px.setdefault(seg.predicted_category, np.zeros((h, w), bool))
            pred_px[seg.predicted_category] |= m
            if seg.predicted_category == seg.gt_category:
                tp[seg.gt_category] = tp.get(seg.gt_category, 0) + 1
            else:
                fn[seg.gt_category] = fn.get(seg.gt_category, 0) + 1
                fp[seg.predicted_category] = fp.get(seg.predicted_category, 0) + 1
        for c in set(gt_px) | set(pred_px):
            g = gt_px.get(c)
            p = pred_px.get(c)
            if g is None:
                g = np.zeros((h, w), bool)
            if p is None:
                p = np.zeros((h, w), bool)
            inter_px[c] = inter_px.get(c, 0) + int((g & p).sum())
            union_px[c] = union_px.get(c, 0) + int((g | p).sum())

    if not classes:
        raise ValueError("no segments supplied")

    pq_per_class = {}
    iou_per_class = {}
    for c in classes:
        t, f_p, f_n = tp.get(c, 0), fp.get(c, 0), fn.get(c, 0)
        denom = t + 0.5 * f_p + 0.5 * f_n
        pq_per_class[c] = (t / denom) if denom else 0.0
        iou_per_class[c] = (inter_px.get(c, 0) / union_px[c]) if union_px.get(c) else 0.0

    pq = 100.0 * sum(pq_per_class.values()) / len(classes)
    miou = 100.0 * sum(iou_per_class.values()) / len(classes)
    return {
        "pq": pq,
        "miou": miou,
        "pq_per_class": pq_per_class,
        "iou_per_class": iou_per_class,
        "num_classes": len(classes),
    }
