"""Record types for instruction-data construction, with JSON-Lines serialization.

JSONL record schema: {image_ref, regions: [{id, category, rle: {size, counts},
bbox}], conversation: [{role, text, bindings}], task}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..masks import RleMask
from ..sequencer import Conversation, Turn

TASKS = ("detailed_description", "conversation", "short_form", "part_qa", "yes_no")

JOB_TYPES = ("description", "conversation", "short_form", "part")

_AFFIRMATIONS = ("yes",)
_NEGATIONS = ("no", "not at all", "this is not so")


@dataclass(frozen=True)
class RegionAnnotation:
    region_id: int
    category: str
    mask: RleMask
    bbox_norm: Tuple[float, float, float, float]
    captions: Tuple[str, ...] = ()
    attributes: Optional[Dict[str, Tuple[str, ...]]] = None

    def __post_init__(self):
        if not self.category:
            raise ValueError("category must be non-empty")
        x1, y1, x2, y2 = self.bbox_norm
        if x1 > x2 or y1 > y2:
            raise ValueError(f"bbox_norm not ordered: {self.bbox_norm}")
        object.__setattr__(self, "captions", tuple(self.captions))


@dataclass(frozen=True)
class InstructionRecord:
    image_ref: str
    regions: Tuple[RegionAnnotation, ...]
    conversation: Conversation
    task: str

    def __post_init__(self):
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        object.__setattr__(self, "regions", tuple(self.regions))
        declared = {r.region_id for r in self.regions}
        for turn in self.conversation.turns:
            for b in turn.bindings:
                if b not in declared:
                    raise ValueError(f"binding {b} not among declared regions")
        if self.task == "yes_no":
            for turn in self.conversation.turns:
                if turn.role != "assistant":
                    continue
                low = turn.text.lower()
                if not low.startswith(_AFFIRMATIONS + _NEGATIONS):
                    raise ValueError(
                        f"yes/no answer must affirm or negate: {turn.text!r}"
                    )

    def first_region_id(self) -> int:
        for turn in self.conversation.turns:
            if turn.bindings:
                return turn.bindings[0]
        return self.regions[0].region_id if self.regions else -1

    def to_json(self) -> dict:
        return {
            "image_ref": self.image_ref,
            "regions": [
                {
                    "id": r.region_id,
                    "category": r.category,
                    "rle": {"size": [r.mask.height, r.mask.width],
                            "counts": list(r.mask.counts)},
                    "bbox": list(r.bbox_norm),
                }
                for r in self.regions
            ],
            "conversation": [
                {"role": t.role, "text": t.text, "bindings": list(t.bindings)}
                for t in self.conversation.turns
            ],
            "task": self.task,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "InstructionRecord":
        regions = tuple(
            RegionAnnotation(
                region_id=r["id"],
                category=r["category"],
                mask=RleMask(r["rle"]["size"][0], r["rle"]["size"][1],
                             tuple(r["rle"]["counts"])),
                bbox_norm=tuple(r["bbox"]),
            )
            for r in obj["regions"]
        )
        conv = Conversation(tuple(
            Turn(t["role"], t["text"], tuple(t.get("bindings", ())))
            for t in obj["conversation"]
        ))
        return cls(obj["image_ref"], regions, conv, obj["task"])


@dataclass(frozen=True)
class PromptJob:
    job_id: str
    system_prompt: str
    few_shot: Tuple[Tuple[str, str], ...]
    query: str
    job_type: str
    image_ref: str = ""
    region_ids: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.job_type not in JOB_TYPES:
            raise ValueError(f"unknown job type {self.job_type!r}")
        object.__setattr__(self, "few_shot", tuple(tuple(p) for p in self.few_shot))
        object.__setattr__(self, "region_ids", tuple(self.region_ids))

    def messages(self, model_role_user="user", model_role_assistant="assistant"):
        msgs = [{"role": "system", "content": self.system_prompt}]
        for context, response in self.few_shot:
            msgs.append({"role": model_role_user, "content": context})
            msgs.append({"role": model_role_assistant, "content": response})
        msgs.append({"role": model_role_user, "content": self.query})
        return msgs

    def to_json(self) -> dict:
        return {
            "job_id": self.job_id,
            "job_type": self.job_type,
            "system_prompt": self.system_prompt,
            "few_shot": [list(p) for p in self.few_shot],
            "query": self.query,
            "image_ref": self.image_ref,
            "region_ids": list(self.region_ids),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PromptJob":
        return cls(
            job_id=obj["job_id"],
            system_prompt=obj["system_prompt"],
            few_shot=tuple(tuple(p) for p in obj.get("few_shot", ())),
            query=obj["query"],
            job_type=obj["job_type"],
            image_ref=obj.get("image_ref", ""),
            region_ids=tuple(obj.get("region_ids", ())),
        )


def write_jsonl(path, items: List[dict]):
    with open(path, "w", encoding="utf-8") as fh:
        for item in items:
            fh.write(json.dumps(item, ensure_ascii=False, sort_keys=True))
            fh.write("\n")


def read_jsonl(path) -> List[dict]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out
