"""LLM-judge scoring: ratio of predicted-answer score to reference-answer score."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..errors import JudgeFailureError

DEFAULT_JUDGE_TEMPLATE = (
    "You are grading answers about a referred image region.\n"
    "Rate each of the two answers below on a scale of 1 to 10 for precision of "
    "the referred region and correctness of the semantics.\n"
    "Reply with exactly two integers separated by a space: the score of "
    "Answer A, then the score of Answer B.\n\n"
    "Question: {question}\n"
    "Answer A: {pred}\n"
    "Answer B: {ref}\n"
)

_TWO_INTS = re.compile(r"\b(10|[1-9])\b")


@dataclass(frozen=True)
class JudgeResult:
    percentage: float
    pred_scores: tuple
    ref_scores: tuple
    skipped: int


def parse_judge_reply(text: str):
    """First two integers in 1..10, or None if the reply is unparseable."""
    found = _TWO_INTS.findall(text)
    if len(found) < 2:
        return None
    return int(found[0]), int(found[1])


def gpt_judge(pred_answers: Sequence[str], ref_answers: Sequence[str], client,
              questions: Optional[Sequence[str]] = None,
              template: str = DEFAULT_JUDGE_TEMPLATE) -> JudgeResult:
    """100 x mean(pred score) / mean(ref score) over parseable judge replies.

    client must expose complete(job_id, messages) -> LlmResponse.  Unparseable
    replies are skipped and counted; all-skipped raises JudgeFailureError.
    """
    if len(pred_answers) != len(ref_answers):
        raise ValueError("answer lists must have equal length")
    if questions is None:
        questions = [""] * len(pred_answers)
    pred_scores: List[int] = []
    ref_scores: List[int] = []
    skipped = 0
    for i, (pred, ref, question) in enumerate(zip(pred_answers, ref_answers, questions)):
        prompt = template.format(question=question, pred=pred, ref=ref)
        resp = client.complete(f"judge-{i}", [{"role": "user", "content": prompt}])
        scores = parse_judge_reply(resp.text) if resp.ok else None
        if scores is None:
            skipped += 1
            continue
        pred_scores.append(scores[0])
        ref_scores.append(scores[1])
    if not pred_scores:
        raise JudgeFailureError("every judge reply was unparseable")
    mean_pred = sum(pred_scores) / len(pred_scores)
    mean_ref = sum(ref_scores) / len(ref_scores)
    if mean_ref == 0:
        raise JudgeFailureError("reference scores are all zero")
    return JudgeResult(
        percentage=100.0 * mean_pred / mean_ref,
        pred_scores=tuple(pred_scores),
        ref_scores=tuple(ref_scores),
        skipped=skipped,
    )
