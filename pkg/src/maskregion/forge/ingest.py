"""Parsing of LLM generation output into instruction records.

Description jobs yield one record per "<regionN>: ..." block; conversation,
short-form and part jobs yield one multi-turn record from their
"Question:/Answer:" pairs.  Records failing validation are rejected, never
repaired.
"""

from __future__ import annotations

import re
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..errors import DanglingRegionError, ParseRejectionError
from ..sequencer import Conversation, Turn
from .templates import DETAILED_DESCRIPTION_QUESTIONS
from .types import InstructionRecord, PromptJob, RegionAnnotation
from .yesno import apply_short_form

_REGION_TAG = re.compile(r"<region(\d+)>")
_QA_SPLIT = re.compile(r"^(Question|Answer)(?:\s*\d+)?\s*:\s*", re.MULTILINE)
_DESC_BLOCK = re.compile(r"^<region(\d+)>\s*:\s*", re.MULTILINE)

_TASK_FOR_JOB = {
    "description": "detailed_description",
    "conversation": "conversation",
    "short_form": "short_form",
    "part": "part_qa",
}


def _bind_markers(text: str, job: PromptJob) -> Tuple[str, Tuple[int, ...]]:
    """Replace <regionN> tags with bare markers, resolving N against the job."""
    bindings: List[int] = []

    def repl(m):
        n = int(m.group(1))
        if not 1 <= n <= len(job.region_ids):
            raise DanglingRegionError(
                f"job {job.job_id}: <region{n}> but only "
                f"{len(job.region_ids)} regions exist"
            )
        bindings.append(job.region_ids[n - 1])
        return "<region>"

    return _REGION_TAG.sub(repl, text), tuple(bindings)


def parse_qa_pairs(text: str) -> List[Tuple[str, str]]:
    """Split "Question:/Answer:" formatted text into (question, answer) pairs."""
    parts = _QA_SPLIT.split(text)
    # parts = [preamble, kind, body, kind, body, ...]
    if len(parts) < 3:
        raise ParseRejectionError("no Question:/Answer: pairs found")
    kinds = parts[1::2]
    bodies = [b.strip() for b in parts[2::2]]
    if len(kinds) % 2 != 0:
        raise ParseRejectionError("dangling question or answer")
    pairs = []
    for i in range(0, len(kinds), 2):
        if kinds[i] != "Question" or kinds[i + 1] != "Answer":
            raise ParseRejectionError("Question/Answer alternation broken")
        pairs.append((bodies[i], bodies[i + 1]))
    return pairs


def parse_description_blocks(text: str) -> List[Tuple[int, str]]:
    parts = _DESC_BLOCK.split(text)
    if len(parts) < 3:
        raise ParseRejectionError("no <regionN>: description blocks found")
    out = []
    for n, body in zip(parts[1::2], parts[2::2]):
        out.append((int(n), body.strip()))
    return out


def ingest_one(job: PromptJob, text: str,
               regions: Sequence[RegionAnnotation],
               seed: int = 0) -> List[InstructionRecord]:
    """Parse one response; raises ParseRejectionError / DanglingRegionError."""
    by_id = {r.region_id: r for r in regions}
    missing = [rid for rid in job.region_ids if rid not in by_id]
    if missing:
        raise DanglingRegionError(f"job {job.job_id}: regions {missing} not annotated")
    task = _TASK_FOR_JOB[job.job_type]
    records: List[InstructionRecord] = []

    if job.job_type == "description":
        rng = np.random.default_rng(seed)
        for n, body in parse_description_blocks(text):
            if not 1 <= n <= len(job.region_ids):
                raise DanglingRegionError(
                    f"job {job.job_id}: <region{n}> out of range"
                )
            rid = job.region_ids[n - 1]
            question = str(rng.choice(DETAILED_DESCRIPTION_QUESTIONS))
            q_bindings = (rid,) if "<region>" in question else ()
            body_text, body_bindings = _bind_markers(body, job)
            conv = Conversation((
                Turn("human", question, q_bindings),
                Turn("assistant", body_text, body_bindings),
            ))
            records.append(InstructionRecord(job.image_ref, (by_id[rid],), conv, task))
        return records

    turns: List[Turn] = []
    for question, answer in parse_qa_pairs(text):
        if job.job_type == "short_form":
            question = apply_short_form(question)
        q_text, q_bindings = _bind_markers(question, job)
        a_text, a_bindings = _bind_markers(answer, job)
        turns.append(Turn("human", q_text, q_bindings))
        turns.append(Turn("assistant", a_text, a_bindings))
    conv = Conversation(tuple(turns))
    used = {b for t in turns for b in t.bindings}
    rec_regions = tuple(r for r in regions if r.region_id in used) or tuple(regions)
    records.append(InstructionRecord(job.image_ref, rec_regions, conv, task))
    return records


def ingest_llm_responses(jobs: Sequence[PromptJob], responses: Dict[str, str],
                         regions_by_image: Dict[str, Sequence[RegionAnnotation]],
                         seed: int = 0):
    """Parse all responses; returns (records, rejections).

    rejections is a list of (job_id, reason) for unparseable or invalid
    responses; valid jobs are never blocked by invalid ones.
    """
    records: List[InstructionRecord] = []
    rejections: List[Tuple[str, str]] = []
    for job in jobs:
        if job.job_id not in responses:
            rejections.append((job.job_id, "no response"))
            continue
        regions = regions_by_image.get(job.image_ref, ())
        try:
            records.extend(ingest_one(job, responses[job.job_id], regions, seed=seed))
        except (ParseRejectionError, DanglingRegionError, ValueError) as exc:
            rejections.append((job.job_id, str(exc)))
    return records, rejections
