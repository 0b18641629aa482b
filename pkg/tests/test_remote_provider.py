from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer

import pytest

from critiq.errors import ProviderError, SchemaViolation
from critiq.feedback import Role
from critiq.perspectives import critique
from critiq.providers import DeterministicProvider, RemoteProvider, provider_from_env


class _StubModelServer:
    """Chat-completions stub: scripted responses, request log."""

    def __init__(self, script):
        self.script = list(script)  # each entry: content string or callable(role)->str
        self.requests = []
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers["Content-Length"])
                body = json.loads(self.rfile.read(length))
                outer.requests.append((self.path, body, dict(self.headers)))
                prompt = body["messages"][0]["content"]
                match = re.search(r'"source_role": "(\w+)"', prompt)
                role = match.group(1) if match else "user_experience"
                step = outer.script.pop(0) if outer.script else outer.script_default
                content = step(role) if callable(step) else step
                payload = json.dumps({"choices": [{"message": {"content": content}}]})
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.end_headers()
                self.wfile.write(payload.encode())

            def log_message(self, *args):
                pass

        self.server = HTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)

    @staticmethod
    def script_default(role):
        return _valid_feedback(role)

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()

    @property
    def base_url(self):
        host, port = self.server.server_address
        return f"http://{host}:{port}"


def _valid_feedback(role: str) -> str:
    return json.dumps({
        "feedback_id": f"remote-{role}",
        "source_role": role,
        "issues": [],
        "summary": "looks fine",
        "priority": "low",
        "detailed_analysis": "nothing notable",
    })


class TestRemoteProvider:
    def test_valid_response_parses(self, checkout_doc, checkout_context):
        with _StubModelServer([]) as stub:
            provider = RemoteProvider(stub.base_url, model="test-model")
            fb = critique(Role.USER_EXPERIENCE, checkout_doc, checkout_context, provider)
            assert fb.sourceRole is Role.USER_EXPERIENCE
            assert fb.summary == "looks fine"
            path, body, _ = stub.requests[0]
            assert path == "/v1/chat/completions"
            assert body["model"] == "test-model"

    def test_repair_retry_over_http(self, checkout_doc, checkout_context):
        with _StubModelServer(["THIS IS NOT JSON"]) as stub:
            provider = RemoteProvider(stub.base_url, model="m")
            fb = critique(Role.PRODUCT_VISION, checkout_doc, checkout_context, provider)
            assert fb.sourceRole is Role.PRODUCT_VISION
            assert len(stub.requests) == 2
            # the repair request tells the model what was wrong
            repair_messages = stub.requests[1][1]["messages"]
            assert any("failed validation" in m["content"] for m in repair_messages)

    def test_double_garbage_raises_schema_violation(self, checkout_doc, checkout_context):
        with _StubModelServer(["garbage", "more garbage"]) as stub:
            provider = RemoteProvider(stub.base_url, model="m")
            with pytest.raises(SchemaViolation):
                critique(Role.ENGINEERING, checkout_doc, checkout_context, provider)

    def test_connection_refused_is_provider_error(self, checkout_doc, checkout_context):
        provider = RemoteProvider("http://127.0.0.1:1", model="m", timeout_ms=500)
        with pytest.raises(ProviderError):
            critique(Role.USER_EXPERIENCE, checkout_doc, checkout_context, provider)

    def test_api_key_header(self, checkout_doc, checkout_context):
        with _StubModelServer([]) as stub:
            provider = RemoteProvider(stub.base_url, model="m", api_key="sk-test")
            critique(Role.USER_EXPERIENCE, checkout_doc, checkout_context, provider)
            _, _, headers = stub.requests[0]
            assert headers.get("Authorization") == "Bearer sk-test"


class TestProviderFromEnv:
    def test_default_is_deterministic(self):
        assert isinstance(provider_from_env({}), DeterministicProvider)

    def test_stub_explicit(self):
        assert isinstance(provider_from_env({"CRITIQ_PROVIDER": "stub"}), DeterministicProvider)

    def test_remote_requires_url_and_model(self):
        with pytest.raises(ProviderError):
            provider_from_env({"CRITIQ_PROVIDER": "remote"})

    def test_remote_configured(self):
        provider = provider_from_env({
            "CRITIQ_PROVIDER": "remote",
            "CRITIQ_BASE_URL": "http://localhost:9999",
            "CRITIQ_MODEL": "design-critic-large",
            "CRITIQ_API_KEY": "sk-x",
            "CRITIQ_TIMEOUT_MS": "1500",
        })
        assert isinstance(provider, RemoteProvider)
        assert provider.timeout_ms == 1500
        assert provider.model == "design-critic-large"

    def test_unknown_provider_rejected(self):
        with pytest.raises(ProviderError):
            provider_from_env({"CRITIQ_PROVIDER": "oracle"})
