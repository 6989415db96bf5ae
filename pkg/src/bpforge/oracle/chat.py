"""Chat turns, oracle requests, and content-addressed request hashing."""

import hashlib
import io
import json
from dataclasses import dataclass, field

from PIL import Image

from ..raster import BinaryImage

ROLES = ("user", "system", "assistant")
PURPOSES = ("hypotheses", "stubs", "synthesis", "repair", "transduction")

# Rules are sampled hot, code cool; the remaining purposes ride with code.
DEFAULT_TEMPERATURES = {
    "hypotheses": 1.0,
    "stubs": 0.5,
    "synthesis": 0.5,
    "repair": 0.5,
    "transduction": 0.5,
}


@dataclass(frozen=True)
class ImageAttachment:
    """PNG-encoded panel plus a stable digest for hashing and scripting."""

    png: bytes = field(repr=False)
    digest: str

    @classmethod
    def from_image(cls, img: BinaryImage) -> "ImageAttachment":
        buf = io.BytesIO()
        Image.fromarray(img.to_gray(), mode="L").save(buf, format="PNG")
        return cls(png=buf.getvalue(), digest=img.digest())


@dataclass(frozen=True)
class ChatTurn:
    role: str
    text: str
    images: tuple[ImageAttachment, ...] = ()

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if self.images and self.role != "user":
            raise ValueError("image attachments are only allowed on user turns")
        if not self.text and not self.images:
            raise ValueError("a turn needs text or images")


@dataclass(frozen=True)
class OracleRequest:
    turns: tuple[ChatTurn, ...]
    temperature: float
    purpose: str
    seed_hint: int = 0

    def __post_init__(self):
        if self.purpose not in PURPOSES:
            raise ValueError(f"unknown purpose {self.purpose!r}")


def make_request(turns, purpose: str, cfg=None, seed_hint: int = 0) -> OracleRequest:
    """Build a request with the purpose-routed temperature."""
    if cfg is not None and purpose == "hypotheses":
        temperature = cfg.temperature_rules
    elif cfg is not None:
        temperature = cfg.temperature_code
    else:
        temperature = DEFAULT_TEMPERATURES[purpose]
    return OracleRequest(turns=tuple(turns), temperature=temperature, purpose=purpose, seed_hint=seed_hint)


def request_hash(req: OracleRequest) -> str:
    """Semantic content hash: prompt refactors that keep content keep fixtures."""
    payload = {
        "purpose": req.purpose,
        "temperature": req.temperature,
        "turns": [
            {"role": t.role, "text": t.text, "images": [a.digest for a in t.images]}
            for t in req.turns
        ],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def prompt_digest(req: OracleRequest) -> str:
    blob = "\n".join(t.text for t in req.turns).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def render_transcript(req: OracleRequest) -> str:
    """Human-readable transcript with image markers; used by snapshot tests."""
    parts = []
    for t in req.turns:
        parts.append(f"-----  {t.role}  --------------------")
        if t.text:
            parts.append(t.text)
        for a in t.images:
            parts.append(f"[image {a.digest[:12]}]")
    return "\n".join(parts) + "\n"
