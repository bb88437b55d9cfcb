"""Dataset-level validation report.

Operates on the JSONL record form (dicts) so that invalid payloads can be
inspected rather than crashing at deserialization; InstructionRecord instances
are accepted and converted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

from ..errors import MalformedRleError
from ..masks import RleMask
from .types import TASKS, InstructionRecord


@dataclass
class DatasetReport:
    task_counts: Dict[str, int] = field(default_factory=dict)
    yes_count: int = 0
    no_count: int = 0
    total_records: int = 0
    valid_rle: int = 0
    total_rle: int = 0
    dangling_regions: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def yesno_balanced(self) -> bool:
        return self.yes_count == self.no_count

    @property
    def rle_validity_rate(self) -> float:
        return self.valid_rle / self.total_rle if self.total_rle else 1.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "task_counts": dict(self.task_counts),
            "yes_count": self.yes_count,
            "no_count": self.no_count,
            "total_records": self.total_records,
            "valid_rle": self.valid_rle,
            "total_rle": self.total_rle,
            "rle_validity_rate": self.rle_validity_rate,
            "dangling_regions": self.dangling_regions,
            "yesno_balanced": self.yesno_balanced,
            "failures": list(self.failures),
            "ok": self.ok,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DatasetReport":
        return cls(
            task_counts=dict(obj["task_counts"]),
            yes_count=obj["yes_count"],
            no_count=obj["no_count"],
            total_records=obj["total_records"],
            valid_rle=obj["valid_rle"],
            total_rle=obj["total_rle"],
            dangling_regions=obj["dangling_regions"],
            failures=list(obj["failures"]),
        )


def validate_dataset(records: Sequence) -> DatasetReport:
    """Per-task counts, yes/no balance, RLE validity and dangling-region checks.

    Hard invariant violations land in report.failures; the report itself never
    raises.
    """
    rep = DatasetReport(task_counts={t: 0 for t in TASKS})
    rep.total_records = len(records)
    for idx, rec in enumerate(records):
        if isinstance(rec, InstructionRecord):
            rec = rec.to_json()
        task = rec.get("task", "")
        rep.task_counts[task] = rep.task_counts.get(task, 0) + 1
        declared = set()
        for r in rec.get("regions", ()):
            declared.add(r.get("id"))
            rep.total_rle += 1
            try:
                size = r["rle"]["size"]
                RleMask(size[0], size[1], tuple(r["rle"]["counts"]))
                rep.valid_rle += 1
            except (MalformedRleError, KeyError, IndexError, TypeError) as exc:
                rep.failures.append(f"record {idx}: malformed RLE: {exc}")
        for turn in rec.get("conversation", ()):
            for b in turn.get("bindings", ()):
                if b not in declared:
                    rep.dangling_regions += 1
                    rep.failures.append(f"record {idx}: dangling region {b}")
        if task == "yes_no":
            for turn in rec.get("conversation", ()):
                if turn.get("role") != "assistant":
                    continue
                if turn.get("text", "").lower().startswith("yes"):
                    rep.yes_count += 1
                else:
                    rep.no_count += 1
    if not rep.yesno_balanced:
        rep.failures.append(
            f"yes/no imbalance: {rep.yes_count} positives vs {rep.no_count} negatives"
        )
    return rep


def write_report(report: DatasetReport, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")
