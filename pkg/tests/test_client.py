import json
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer

import pytest

from maskregion.forge.client import (
    ChatCompletionClient,
    IngestMismatchError,
    LlmResponse,
    export_batch,
    ingest_batch,
    load_batch,
    persist_responses,
)
from maskregion.forge.types import PromptJob


def make_job(i, kind="conversation"):
    return PromptJob(job_id=f"job{i}", system_prompt="sys", few_shot=(),
                     query=f"query {i}", job_type=kind, image_ref=f"img{i}",
                     region_ids=(i,))


class FakeResponse:
    def __init__(self, status_code, body=None):
        self.status_code = status_code
        self._body = body or {}

    def json(self):
        if isinstance(self._body, Exception):
            raise self._body
        return self._body


class FakeSession:
    """Scripted transcript of responses, served in order per call."""

    def __init__(self, script):
        self.script = list(script)
        self.calls = []

    def post(self, url, json=None, headers=None, timeout=None):
        self.calls.append({"url": url, "json": json, "headers": headers})
        return self.script.pop(0)


def ok_body(text):
    return {"choices": [{"message": {"content": text}}]}


class TestOfflineBatch:
    def test_export_round_trip(self, tmp_path):
        jobs = [make_job(0), make_job(1, "part")]
        path = tmp_path / "batch.jsonl"
        export_batch(jobs, path)
        back = load_batch(path)
        assert back == jobs
        lines = path.read_text().strip().split("\n")
        assert len(lines) == 2
        assert json.loads(lines[0])["job_id"] == "job0"

    def test_ingest_partial_failure(self, tmp_path):
        jobs = [make_job(0), make_job(1)]
        path = tmp_path / "resp.jsonl"
        path.write_text(json.dumps({"job_id": "job0", "text": "hello"}) + "\n")
        responses = ingest_batch(jobs, path)
        assert responses["job0"].ok and responses["job0"].text == "hello"
        assert not responses["job1"].ok
        assert "no response" in responses["job1"].error

    def test_ingest_unknown_job_id(self, tmp_path):
        path = tmp_path / "resp.jsonl"
        path.write_text(json.dumps({"job_id": "ghost", "text": "x"}) + "\n")
        with pytest.raises(IngestMismatchError):
            ingest_batch([make_job(0)], path)

    def test_persist_sorted_by_job_id(self, tmp_path):
        responses = {
            "b": LlmResponse("b", text="2"),
            "a": LlmResponse("a", text="1"),
        }
        path = tmp_path / "out.jsonl"
        persist_responses(responses, path)
        rows = [json.loads(l) for l in path.read_text().strip().split("\n")]
        assert [r["job_id"] for r in rows] == ["a", "b"]


class TestClientRetry:
    def test_success_first_try(self):
        session = FakeSession([FakeResponse(200, ok_body("hi"))])
        client = ChatCompletionClient(endpoint="http://x", model="m",
                                      session=session, sleep=lambda s: None)
        resp = client.complete("j", [{"role": "user", "content": "q"}])
        assert resp.ok and resp.text == "hi"
        assert len(session.calls) == 1

    def test_429_then_success(self):
        sleeps = []
        session = FakeSession([FakeResponse(429),
                               FakeResponse(200, ok_body("after retry"))])
        client = ChatCompletionClient(endpoint="http://x", session=session,
                                      backoff_base=0.5, sleep=sleeps.append)
        resp = client.complete("j", [])
        assert resp.ok and resp.text == "after retry"
        assert sleeps == [0.5]

    def test_exponential_backoff_schedule(self):
        sleeps = []
        session = FakeSession([FakeResponse(503)] * 4)
        client = ChatCompletionClient(endpoint="http://x", session=session,
                                      backoff_base=1.0, max_retries=3,
                                      sleep=sleeps.append)
        resp = client.complete("j", [])
        assert not resp.ok
        assert "HTTP 503" in resp.error
        assert sleeps == [1.0, 2.0, 4.0]

    def test_non_retryable_fails_immediately(self):
        session = FakeSession([FakeResponse(401)])
        client = ChatCompletionClient(endpoint="http://x", session=session,
                                      sleep=lambda s: None)
        resp = client.complete("j", [])
        assert not resp.ok and "401" in resp.error
        assert len(session.calls) == 1

    def test_malformed_body_fails(self):
        session = FakeSession([FakeResponse(200, {"unexpected": True})])
        client = ChatCompletionClient(endpoint="http://x", session=session,
                                      sleep=lambda s: None)
        resp = client.complete("j", [])
        assert not resp.ok and "malformed" in resp.error

    def test_credential_from_environment_only(self, monkeypatch):
        session = FakeSession([FakeResponse(200, ok_body("x"))])
        client = ChatCompletionClient(endpoint="http://x", session=session,
                                      sleep=lambda s: None)
        monkeypatch.setenv("LLM_API_KEY", "sk-test")
        client.complete("j", [])
        assert session.calls[0]["headers"]["Authorization"] == "Bearer sk-test"
        session2 = FakeSession([FakeResponse(200, ok_body("x"))])
        client2 = ChatCompletionClient(endpoint="http://x", session=session2,
                                       sleep=lambda s: None)
        monkeypatch.delenv("LLM_API_KEY")
        client2.complete("j", [])
        assert "Authorization" not in session2.calls[0]["headers"]

    def test_submit_batch_isolates_failures(self):
        session = FakeSession([FakeResponse(200, ok_body("a")),
                               FakeResponse(500),
                               FakeResponse(500),
                               FakeResponse(500),
                               FakeResponse(500)])
        client = ChatCompletionClient(endpoint="http://x", session=session,
                                      max_in_flight=1, sleep=lambda s: None)
        results = client.submit([make_job(0), make_job(1)])
        assert results["job0"].ok
        assert not results["job1"].ok


class _Scripted429Handler(BaseHTTPRequestHandler):
    hits = 0

    def do_POST(self):
        cls = type(self)
        cls.hits += 1
        length = int(self.headers.get("Content-Length", 0))
        self.rfile.read(length)
        if cls.hits == 1:
            self.send_response(429)
            self.end_headers()
            return
        body = json.dumps(ok_body("live reply")).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


def test_retry_against_local_http_server():
    server = HTTPServer(("127.0.0.1", 0), _Scripted429Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        url = f"http://127.0.0.1:{server.server_port}/v1/chat/completions"
        client = ChatCompletionClient(endpoint=url, model="m",
                                      sleep=lambda s: None)
        resp = client.complete("j", [{"role": "user", "content": "hi"}])
        assert resp.ok and resp.text == "live reply"
        assert _Scripted429Handler.hits == 2
    finally:
        server.shutdown()
        thread.join()
