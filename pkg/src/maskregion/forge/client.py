"""Chat-completion client with bounded concurrency, retries, and an offline
batch mode for reproducible runs without network access."""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import requests

from ..errors import MaskRegionError
from .types import PromptJob, read_jsonl, write_jsonl

DEFAULT_CREDENTIAL_ENV = "LLM_API_KEY"
RETRYABLE_STATUS = {408, 429, 500, 502, 503, 504}


class IngestMismatchError(MaskRegionError):
    """Response file entry does not match any submitted job."""


@dataclass(frozen=True)
class LlmResponse:
    job_id: str
    text: str = ""
    ok: bool = True
    error: str = ""


class ChatCompletionClient:
    """POSTs one chat-completion request per job against an OpenAI-style endpoint.

    Retries transient failures with exponential backoff (max_retries attempts
    after the first), caps in-flight requests, and never lets one failed job
    abort the batch.
    """

    def __init__(self, endpoint: str = "", model: str = "",
                 credential_env: str = DEFAULT_CREDENTIAL_ENV,
                 max_retries: int = 3, backoff_base: float = 1.0,
                 max_in_flight: int = 4, timeout: float = 120.0,
                 session: Optional[requests.Session] = None,
                 sleep=time.sleep):
        self.endpoint = endpoint
        self.model = model
        self.credential_env = credential_env
        self.max_retries = max_retries
        self.backoff_base = backoff_base
        self.max_in_flight = max_in_flight
        self.timeout = timeout
        self._session = session or requests.Session()
        self._sleep = sleep

    def _headers(self):
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.credential_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def _submit_one(self, job: PromptJob) -> LlmResponse:
        return self.complete(job.job_id, job.messages())

    def complete(self, job_id: str, messages: List[dict]) -> LlmResponse:
        payload = {"model": self.model, "messages": messages}
        last_error = "no attempt made"
        for attempt in range(self.max_retries + 1):
            if attempt:
                self._sleep(self.backoff_base * 2 ** (attempt - 1))
            try:
                resp = self._session.post(self.endpoint, json=payload,
                                          headers=self._headers(),
                                          timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = f"connection error: {exc}"
                continue
            if resp.status_code in RETRYABLE_STATUS:
                last_error = f"HTTP {resp.status_code}"
                continue
            if resp.status_code != 200:
                return LlmResponse(job_id, ok=False,
                                   error=f"HTTP {resp.status_code}")
            try:
                text = resp.json()["choices"][0]["message"]["content"]
            except (ValueError, KeyError, IndexError) as exc:
                return LlmResponse(job_id, ok=False,
                                   error=f"malformed response body: {exc}")
            return LlmResponse(job_id, text=text)
        return LlmResponse(job_id, ok=False,
                           error=f"failed after {self.max_retries} retries: {last_error}")

    def submit(self, jobs: Sequence[PromptJob]) -> Dict[str, LlmResponse]:
        """Submit all jobs; returns {job_id: LlmResponse} with failures marked."""
        with ThreadPoolExecutor(max_workers=self.max_in_flight) as pool:
            results = list(pool.map(self._submit_one, jobs))
        return {r.job_id: r for r in results}


def export_batch(jobs: Sequence[PromptJob], path):
    """Write a prompt-batch JSONL file for offline processing."""
    write_jsonl(path, [job.to_json() for job in jobs])


def load_batch(path) -> List[PromptJob]:
    return [PromptJob.from_json(obj) for obj in read_jsonl(path)]


def ingest_batch(jobs: Sequence[PromptJob], path) -> Dict[str, LlmResponse]:
    """Read a response JSONL file ({job_id, text} per line) produced offline.

    Jobs without a matching response are marked failed; responses for unknown
    job_ids raise IngestMismatchError.
    """
    known = {job.job_id for job in jobs}
    responses: Dict[str, LlmResponse] = {}
    for obj in read_jsonl(path):
        job_id = obj.get("job_id")
        if job_id not in known:
            raise IngestMismatchError(f"response for unknown job {job_id!r}")
        responses[job_id] = LlmResponse(job_id, text=obj.get("text", ""))
    for job in jobs:
        if job.job_id not in responses:
            responses[job.job_id] = LlmResponse(job.job_id, ok=False,
                                                error="no response in batch file")
    return responses


def persist_responses(responses: Dict[str, LlmResponse], path):
    rows = [
        {"job_id": r.job_id, "text": r.text, "ok": r.ok, "error": r.error}
        for r in sorted(responses.values(), key=lambda r: r.job_id)
    ]
    write_jsonl(path, rows)
