"""Annotation ingestion for COCO-style instance files (COCO, LVIS, PACO),
referring-expression caption files, and image-level description files."""

from __future__ import annotations

import json
from typing import Dict, List, Sequence

from ..masks import encode_rle, from_coco_segmentation
from .types import RegionAnnotation


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_instances(path) -> Dict[str, List[RegionAnnotation]]:
    """COCO-style instances JSON -> {image_ref: [RegionAnnotation, ...]}.

    Segmentations may be polygon lists or RLE objects; bboxes are normalized
    from pixel [x, y, w, h].  Optional per-annotation "captions" (list of str)
    and "attributes" ({group: [names]}) fields are carried through.
    """
    data = _load_json(path)
    images = {img["id"]: img for img in data["images"]}
    categories = {c["id"]: c["name"] for c in data.get("categories", [])}
    out: Dict[str, List[RegionAnnotation]] = {}
    for ann in data["annotations"]:
        img = images[ann["image_id"]]
        h, w = img["height"], img["width"]
        mask = from_coco_segmentation(ann["segmentation"], h, w)
        x, y, bw, bh = ann["bbox"]
        region = RegionAnnotation(
            region_id=ann["id"],
            category=categories.get(ann.get("category_id"),
                                    ann.get("category", "object")),
            mask=encode_rle(mask),
            bbox_norm=(x / w, y / h, (x + bw) / w, (y + bh) / h),
            captions=tuple(ann.get("captions", ())),
            attributes={k: tuple(v) for k, v in ann["attributes"].items()}
            if ann.get("attributes") else None,
        )
        ref = img.get("file_name", str(img["id"]))
        out.setdefault(ref, []).append(region)
    for regions in out.values():
        regions.sort(key=lambda r: r.region_id)
    return out


def load_referring_captions(path) -> Dict[int, List[str]]:
    """Referring-expression refs JSON -> {annotation id: [caption, ...]}."""
    data = _load_json(path)
    out: Dict[int, List[str]] = {}
    for ref in data:
        sents = [s["sent"] if isinstance(s, dict) else s
                 for s in ref.get("sentences", ())]
        out.setdefault(ref["ann_id"], []).extend(sents)
    return out


def attach_captions(regions_by_image: Dict[str, List[RegionAnnotation]],
                    captions_by_ann: Dict[int, Sequence[str]]):
    """New region map with referring captions appended per annotation id."""
    out: Dict[str, List[RegionAnnotation]] = {}
    for ref, regions in regions_by_image.items():
        out[ref] = [
            RegionAnnotation(
                region_id=r.region_id,
                category=r.category,
                mask=r.mask,
                bbox_norm=r.bbox_norm,
                captions=r.captions + tuple(captions_by_ann.get(r.region_id, ())),
                attributes=r.attributes,
            )
            for r in regions
        ]
    return out


def load_descriptions(path) -> Dict[str, str]:
    """Image-level description JSON: either {image_ref: text} or a list of
    {"image"/"id": ..., "description"/"value": ...} entries."""
    data = _load_json(path)
    if isinstance(data, dict):
        return {str(k): str(v) for k, v in data.items()}
    out = {}
    for entry in data:
        key = entry.get("image", entry.get("id"))
        text = entry.get("description", entry.get("value", ""))
        out[str(key)] = str(text)
    return out
