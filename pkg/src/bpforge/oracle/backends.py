"""Oracle backends: scripted, replay, and live (with recording).

Live responses are persisted to an append-only record store keyed by the
semantic request hash, so any live run can later be replayed offline and
deterministically. The replay backend never touches the network.
"""

import base64
import json
import logging
import os
import threading
import time
from pathlib import Path

import httpx

from ..errors import MissingFixture, OracleUnavailable
from .chat import OracleRequest, prompt_digest, request_hash

logger = logging.getLogger(__name__)

ENV_ENDPOINT = "BPFORGE_ORACLE_ENDPOINT"
ENV_MODEL = "BPFORGE_ORACLE_MODEL"
ENV_API_KEY = "BPFORGE_ORACLE_API_KEY"


class CacheStore:
    """Append-only JSONL of oracle exchanges; last record per hash wins."""

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def load(self) -> dict:
        responses = {}
        if not self.path.exists():
            return responses
        with self.path.open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                responses[record["hash"]] = record["response"]
        return responses

    def append(self, req: OracleRequest, response: str) -> None:
        record = {
            "hash": request_hash(req),
            "purpose": req.purpose,
            "prompt_digest": prompt_digest(req),
            "response": response,
            "timestamp": time.time(),
        }
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")


class ScriptedBackend:
    """Deterministic responder for tests and the offline demo mode."""

    kind = "scripted"

    def __init__(self, responder):
        self.responder = responder
        self.requests: list[OracleRequest] = []

    def complete(self, req: OracleRequest) -> str:
        self.requests.append(req)
        return self.responder(req)


class ReplayBackend:
    """Serves recorded responses; raises MissingFixture for anything new."""

    kind = "replay"

    def __init__(self, cache_path):
        self.store = CacheStore(cache_path)
        self._responses = self.store.load()

    def complete(self, req: OracleRequest) -> str:
        key = request_hash(req)
        if key not in self._responses:
            raise MissingFixture(key)
        return self._responses[key]


class RecordingBackend:
    """Wrap any backend and persist every exchange for later replay."""

    kind = "recording"

    def __init__(self, inner, cache_path):
        self.inner = inner
        self.store = CacheStore(cache_path)

    def complete(self, req: OracleRequest) -> str:
        response = self.inner.complete(req)
        self.store.append(req, response)
        return response


class _RateLimiter:
    """Token bucket; smooths request bursts against the live endpoint."""

    def __init__(self, rate_per_s: float, burst: int, sleeper=time.sleep):
        self.rate = rate_per_s
        self.capacity = burst
        self.tokens = float(burst)
        self.updated = time.monotonic()
        self.sleeper = sleeper
        self._lock = threading.Lock()

    def acquire(self) -> None:
        with self._lock:
            now = time.monotonic()
            self.tokens = min(self.capacity, self.tokens + (now - self.updated) * self.rate)
            self.updated = now
            if self.tokens >= 1.0:
                self.tokens -= 1.0
                return
            wait = (1.0 - self.tokens) / self.rate
            self.tokens = 0.0
        self.sleeper(wait)


class LiveBackend:
    """Chat-completion HTTP client with retries, recording every exchange.

    Endpoint, model name, and credential come from the environment unless
    passed explicitly. A custom httpx transport can be injected for tests.
    """

    kind = "live"

    def __init__(
        self,
        cache_path,
        endpoint=None,
        model=None,
        api_key=None,
        transport=None,
        max_retries: int = 3,
        sleeper=time.sleep,
        rate_per_s: float = 2.0,
    ):
        self.endpoint = endpoint or os.environ.get(ENV_ENDPOINT)
        self.model = model or os.environ.get(ENV_MODEL)
        self.api_key = api_key or os.environ.get(ENV_API_KEY)
        if not self.endpoint or not self.model:
            raise OracleUnavailable(
                f"live backend needs {ENV_ENDPOINT} and {ENV_MODEL} (and usually {ENV_API_KEY})"
            )
        self.store = CacheStore(cache_path)
        self.max_retries = max_retries
        self.sleeper = sleeper
        self.limiter = _RateLimiter(rate_per_s, burst=2, sleeper=sleeper)
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        self._client = httpx.Client(transport=transport, headers=headers, timeout=120.0)

    def _payload(self, req: OracleRequest) -> dict:
        messages = []
        for turn in req.turns:
            if turn.images:
                content = [{"type": "text", "text": turn.text}] if turn.text else []
                for att in turn.images:
                    b64 = base64.b64encode(att.png).decode("ascii")
                    content.append(
                        {"type": "image_url", "image_url": {"url": f"data:image/png;base64,{b64}"}}
                    )
                messages.append({"role": turn.role, "content": content})
            else:
                messages.append({"role": turn.role, "content": turn.text})
        return {"model": self.model, "temperature": req.temperature, "messages": messages}

    def complete(self, req: OracleRequest) -> str:
        last_error = None
        for attempt in range(self.max_retries):
            self.limiter.acquire()
            try:
                resp = self._client.post(
                    f"{self.endpoint.rstrip('/')}/chat/completions", json=self._payload(req)
                )
                resp.raise_for_status()
                text = resp.json()["choices"][0]["message"]["content"]
                self.store.append(req, text)
                return text
            except (httpx.HTTPError, KeyError, ValueError) as e:
                last_error = e
                wait = 0.5 * (2**attempt)
                logger.warning("oracle call failed (attempt %d): %s; retrying in %.1fs", attempt + 1, e, wait)
                self.sleeper(wait)
        raise OracleUnavailable(f"oracle endpoint failed after {self.max_retries} attempts: {last_error}")


def complete(req: OracleRequest, backend) -> str:
    """Send one request through whichever backend is configured."""
    return backend.complete(req)
