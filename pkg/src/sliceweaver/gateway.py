"""Chat-completion gateway with two interchangeable backends.

LiveBackend speaks the OpenAI-compatible chat-completions wire shape over
HTTPS (base URL, model, and key come from IBN_LLM_* environment variables or
explicit arguments). ScriptedBackend replays a fixed exchange list and never
touches the network, which makes every end-to-end test hermetic and
byte-reproducible.

A ChatSession wraps a backend and records per-call token usage; one ReAct
session owns exactly one ChatSession.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path

import requests

ENV_BASE_URL = "IBN_LLM_BASE_URL"
ENV_MODEL = "IBN_LLM_MODEL"
ENV_API_KEY = "IBN_LLM_API_KEY"

VALID_ROLES = ("system", "user", "assistant")


class GatewayError(Exception):
    pass


class TransportError(GatewayError):
    """Network-level failure or retryable provider status (5xx / 429)."""


class ProviderError(GatewayError):
    """Non-retryable provider response (bad request, auth, malformed payload)."""


class ScriptError(GatewayError):
    """A scripted exchange did not line up with the actual request."""


@dataclass(frozen=True)
class ChatMessage:
    role: str
    content: str

    def __post_init__(self) -> None:
        if self.role not in VALID_ROLES:
            raise ValueError(f"role must be one of {VALID_ROLES}, got {self.role!r}")
        if self.role in ("system", "user") and not self.content:
            raise ValueError(f"{self.role} message content must be non-empty")


@dataclass(frozen=True)
class CompletionResult:
    text: str
    prompt_tokens: int
    completion_tokens: int
    latency_s: float
    backend_id: str

    @property
    def total_tokens(self) -> int:
        return self.prompt_tokens + self.completion_tokens


@dataclass(frozen=True)
class Usage:
    prompt_tokens: int = 0
    completion_tokens: int = 0
    wall_seconds: float = 0.0
    calls: int = 0

    @property
    def total_tokens(self) -> int:
        return self.prompt_tokens + self.completion_tokens


@dataclass(frozen=True)
class ScriptedExchange:
    """One canned reply. Token counts may be configured so fixtures can
    reproduce reported usage exactly; otherwise a chars/4 estimate is used.
    The optional matchers guard against prompt drift."""

    response: str
    prompt_tokens: int | None = None
    completion_tokens: int | None = None
    expect_contains: str | None = None
    expect_sha256: str | None = None


def _render_history(messages: list[ChatMessage]) -> str:
    return "\n".join(f"{m.role}: {m.content}" for m in messages)


def _estimate_tokens(text: str) -> int:
    return max(1, len(text) // 4)


class ScriptedBackend:
    """Replays exchanges strictly in order; safe for concurrent callers."""

    deterministic = True

    def __init__(self, exchanges: list[ScriptedExchange], backend_id: str = "scripted"):
        self.backend_id = backend_id
        self._exchanges = list(exchanges)
        self._index = 0
        self._lock = threading.Lock()

    def remaining(self) -> int:
        with self._lock:
            return len(self._exchanges) - self._index

    def complete(self, messages: list[ChatMessage], temperature: float = 0.0) -> CompletionResult:
        with self._lock:
            if self._index >= len(self._exchanges):
                raise ScriptError(
                    f"script {self.backend_id!r} exhausted after "
                    f"{len(self._exchanges)} exchanges"
                )
            exchange = self._exchanges[self._index]
            self._index += 1
        rendered = _render_history(messages)
        if exchange.expect_contains is not None and exchange.expect_contains not in rendered:
            raise ScriptError(
                f"script {self.backend_id!r} expected prompt containing "
                f"{exchange.expect_contains!r}, got: {rendered[:200]!r}..."
            )
        if exchange.expect_sha256 is not None:
            digest = hashlib.sha256(rendered.encode("utf-8")).hexdigest()
            if digest != exchange.expect_sha256:
                raise ScriptError(
                    f"script {self.backend_id!r} expected prompt digest "
                    f"{exchange.expect_sha256}, got {digest}"
                )
        prompt_tokens = (
            exchange.prompt_tokens
            if exchange.prompt_tokens is not None
            else _estimate_tokens(rendered)
        )
        completion_tokens = (
            exchange.completion_tokens
            if exchange.completion_tokens is not None
            else _estimate_tokens(exchange.response)
        )
        return CompletionResult(
            text=exchange.response,
            prompt_tokens=prompt_tokens,
            completion_tokens=completion_tokens,
            latency_s=0.0,
            backend_id=self.backend_id,
        )


class LiveBackend:
    """OpenAI-compatible chat-completions client with bounded retries."""

    deterministic = False
    backend_id = "live"

    MAX_ATTEMPTS = 3
    BACKOFF_START_S = 0.5
    RETRYABLE_STATUS = frozenset({429, 500, 502, 503, 504})

    def __init__(
        self,
        base_url: str | None = None,
        model: str | None = None,
        api_key: str | None = None,
        timeout_s: float = 60.0,
        session: requests.Session | None = None,
    ):
        self.base_url = (base_url or os.environ.get(ENV_BASE_URL, "")).rstrip("/")
        self.model = model or os.environ.get(ENV_MODEL, "")
        self.api_key = api_key or os.environ.get(ENV_API_KEY, "")
        self.timeout_s = timeout_s
        self._session = session or requests.Session()
        if not self.base_url or not self.model:
            raise GatewayError(
                f"live backend needs a base URL and model: set {ENV_BASE_URL} and "
                f"{ENV_MODEL} (and usually {ENV_API_KEY})"
            )

    def complete(self, messages: list[ChatMessage], temperature: float = 0.0) -> CompletionResult:
        payload = {
            "model": self.model,
            "messages": [{"role": m.role, "content": m.content} for m in messages],
            "temperature": temperature,
        }
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        url = f"{self.base_url}/chat/completions"
        last_error: Exception | None = None
        for attempt in range(self.MAX_ATTEMPTS):
            if attempt:
                time.sleep(self.BACKOFF_START_S * (2 ** (attempt - 1)))
            start = time.perf_counter()
            try:
                response = self._session.post(
                    url, json=payload, headers=headers, timeout=self.timeout_s
                )
            except requests.RequestException as exc:
                last_error = TransportError(f"transport failure calling {url}: {exc}")
                continue
            elapsed = time.perf_counter() - start
            if response.status_code in self.RETRYABLE_STATUS:
                last_error = TransportError(
                    f"provider returned {response.status_code}; retryable"
                )
                continue
            if response.status_code != 200:
                raise ProviderError(
                    f"provider returned {response.status_code}: {response.text[:300]}"
                )
            return self._parse_response(response, elapsed)
        assert last_error is not None
        raise last_error

    def _parse_response(self, response: requests.Response, elapsed: float) -> CompletionResult:
        try:
            body = response.json()
            text = body["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ProviderError(f"malformed provider response: {exc}") from exc
        usage = body.get("usage") or {}
        prompt_tokens = int(usage.get("prompt_tokens", 0))
        completion_tokens = int(usage.get("completion_tokens", 0))
        return CompletionResult(
            text=text,
            prompt_tokens=prompt_tokens,
            completion_tokens=completion_tokens,
            latency_s=elapsed,
            backend_id=self.backend_id,
        )


class ChatSession:
    """Per-run usage recorder in front of a backend.

    Validates the history contract (non-empty, starts with a system message)
    and records one usage entry per successful completion; retries inside the
    backend never double-count.
    """

    def __init__(self, backend):
        self.backend = backend
        self.calls: list[CompletionResult] = []

    @property
    def deterministic(self) -> bool:
        return bool(getattr(self.backend, "deterministic", False))

    def complete(self, messages: list[ChatMessage], temperature: float = 0.0) -> CompletionResult:
        if not messages:
            raise ValueError("history must be non-empty")
        if messages[0].role != "system":
            raise ValueError("history must start with a system message")
        result = self.backend.complete(messages, temperature=temperature)
        self.calls.append(result)
        return result

    def total_usage(self) -> Usage:
        return Usage(
            prompt_tokens=sum(c.prompt_tokens for c in self.calls),
            completion_tokens=sum(c.completion_tokens for c in self.calls),
            wall_seconds=sum(c.latency_s for c in self.calls),
            calls=len(self.calls),
        )


def exchange_from_dict(entry: dict) -> ScriptedExchange:
    if not isinstance(entry, dict) or "response" not in entry:
        raise ScriptError(f"script entry must be an object with 'response': {entry!r}")
    known = {"response", "prompt_tokens", "completion_tokens", "expect_contains", "expect_sha256"}
    unknown = set(entry) - known
    if unknown:
        raise ScriptError(f"script entry has unknown field(s) {sorted(unknown)}")
    return ScriptedExchange(
        response=entry["response"],
        prompt_tokens=entry.get("prompt_tokens"),
        completion_tokens=entry.get("completion_tokens"),
        expect_contains=entry.get("expect_contains"),
        expect_sha256=entry.get("expect_sha256"),
    )


def load_script(path: str | Path) -> list[ScriptedExchange]:
    """Load a flat, ordered exchange list from a fixture file."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, list):
        raise ScriptError(f"{path}: flat script fixture must be a JSON list")
    return [exchange_from_dict(entry) for entry in doc]


class SuiteFixture:
    """A fixture bundling scripts per (scenario, system) for whole-suite runs."""

    def __init__(self, scripts: dict[str, dict[str, list[ScriptedExchange]]], name: str):
        self._scripts = scripts
        self.name = name
        self.deterministic = True

    @classmethod
    def from_file(cls, path: str | Path) -> "SuiteFixture":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(doc, dict) or "scenarios" not in doc:
            raise ScriptError(f"{path}: suite fixture must be an object with 'scenarios'")
        scripts: dict[str, dict[str, list[ScriptedExchange]]] = {}
        for scenario_id, systems in doc["scenarios"].items():
            if not isinstance(systems, dict):
                raise ScriptError(f"{path}: scenario {scenario_id!r} must map systems to scripts")
            scripts[scenario_id] = {
                system: [exchange_from_dict(e) for e in exchanges]
                for system, exchanges in systems.items()
            }
        return cls(scripts, name=str(path))

    def systems_for(self, scenario_id: str) -> list[str]:
        return sorted(self._scripts.get(scenario_id, {}))

    def backend_for(self, scenario_id: str, system: str) -> ScriptedBackend:
        try:
            exchanges = self._scripts[scenario_id][system]
        except KeyError:
            raise ScriptError(
                f"suite fixture {self.name!r} has no script for scenario "
                f"{scenario_id!r} / system {system!r}"
            ) from None
        return ScriptedBackend(exchanges, backend_id=f"scripted:{scenario_id}:{system}")
