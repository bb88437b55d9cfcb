"""Instruction-data construction: prompt jobs, response ingestion, negative
mining, yes/no balancing, short-form suffixing, and the chat-completion client."""

from .types import InstructionRecord, PromptJob, RegionAnnotation
from .jobs import build_object_prompt_jobs, build_part_prompt_jobs
from .ingest import ingest_llm_responses
from .mining import mine_class_negative, mine_spatial_negative
from .yesno import apply_short_form, build_balanced_yesno, build_yesno_records
from .validate import validate_dataset
from .client import ChatCompletionClient, LlmResponse

__all__ = [
    "InstructionRecord", "PromptJob", "RegionAnnotation",
    "build_object_prompt_jobs", "build_part_prompt_jobs",
    "ingest_llm_responses",
    "mine_class_negative", "mine_spatial_negative",
    "apply_short_form", "build_balanced_yesno", "build_yesno_records",
    "validate_dataset",
    "ChatCompletionClient", "LlmResponse",
]
