"""Prompt-job construction for object-level and part-level generation."""

from __future__ import annotations

from typing import Sequence, Tuple

from ..errors import MissingCaptionError, UnknownAttributeError
from .taxonomy import ALL_ATTRIBUTES
from .templates import SYSTEM_PROMPTS
from .types import PromptJob, RegionAnnotation

OBJECT_JOB_KINDS = ("description", "conversation", "short_form")


def format_box(bbox_norm) -> str:
    return "[" + ",".join(f"{v:.4f}" for v in bbox_norm) + "]"


def _object_query(description: str, regions: Sequence[RegionAnnotation]) -> str:
    lines = [description, ""]
    box_lines = [
        f"{r.category}: {format_box(r.bbox_norm)}" for r in regions
    ]
    lines.append(", ".join(box_lines) + ".")
    lines.append("")
    for i, r in enumerate(regions, start=1):
        lines.append(f"<region{i}> ({r.category}: {format_box(r.bbox_norm)}):")
        lines.append(" // ".join(r.captions))
    return "\n".join(lines)


def build_object_prompt_jobs(image_ref: str, description: str,
                             regions: Sequence[RegionAnnotation], kind: str,
                             few_shot: Sequence[Tuple[str, str]] = (),
                             job_id: str = "") -> PromptJob:
    """One GPT job whose query serializes the image description, normalized
    boxes (4 decimal places), and per-region captions."""
    if kind not in OBJECT_JOB_KINDS:
        raise ValueError(f"unknown object job kind {kind!r}")
    if not regions:
        raise MissingCaptionError("no regions supplied")
    for r in regions:
        if not r.captions:
            raise MissingCaptionError(f"region {r.region_id} has no caption")
    return PromptJob(
        job_id=job_id or f"{image_ref}:{kind}",
        system_prompt=SYSTEM_PROMPTS[kind],
        few_shot=tuple(few_shot),
        query=_object_query(description, regions),
        job_type=kind,
        image_ref=image_ref,
        region_ids=tuple(r.region_id for r in regions),
    )


def split_category(category: str) -> Tuple[str, str]:
    """Split an "object:part" category; the part is empty for whole objects."""
    obj, _, part = category.partition(":")
    return obj, part


def region_attribute_list(region: RegionAnnotation) -> Tuple[str, ...]:
    if not region.attributes:
        return ()
    out = []
    for group in ("colors", "patterns_markings", "materials", "reflectance"):
        out.extend(region.attributes.get(group, ()))
    return tuple(out)


def build_part_prompt_jobs(image_ref: str, regions: Sequence[RegionAnnotation],
                           few_shot: Sequence[Tuple[str, str]] = (),
                           job_id: str = "") -> PromptJob:
    """One GPT job with a "<regionN> category: attr1,attr2,..." line per region."""
    if not regions:
        raise UnknownAttributeError("no regions supplied")
    lines = []
    for i, r in enumerate(regions, start=1):
        attrs = region_attribute_list(r)
        if not attrs:
            raise UnknownAttributeError(f"region {r.region_id} has no attributes")
        for a in attrs:
            if a not in ALL_ATTRIBUTES:
                raise UnknownAttributeError(f"attribute {a!r} outside the taxonomy")
        lines.append(f"<region{i}> {r.category}: {','.join(attrs)}")
    return PromptJob(
        job_id=job_id or f"{image_ref}:part",
        system_prompt=SYSTEM_PROMPTS["part"],
        few_shot=tuple(few_shot),
        query="\n".join(lines),
        job_type="part",
        image_ref=image_ref,
        region_ids=tuple(r.region_id for r in regions),
    )
