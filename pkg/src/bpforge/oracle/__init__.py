"""Chat-oracle abstraction: prompt assembly, extraction, and backends."""

from .api import (
    FailureReport,
    generate_hypotheses,
    request_repair,
    suggest_method_stubs,
    synthesize_programs,
    transduce_label,
)
from .backends import (
    CacheStore,
    LiveBackend,
    RecordingBackend,
    ReplayBackend,
    ScriptedBackend,
    complete,
)
from .chat import (
    ChatTurn,
    ImageAttachment,
    OracleRequest,
    make_request,
    render_transcript,
    request_hash,
)
from .extract import extract_code_blocks, extract_label, extract_objects, extract_rules

__all__ = [
    "CacheStore",
    "ChatTurn",
    "FailureReport",
    "ImageAttachment",
    "LiveBackend",
    "OracleRequest",
    "RecordingBackend",
    "ReplayBackend",
    "ScriptedBackend",
    "complete",
    "extract_code_blocks",
    "extract_label",
    "extract_objects",
    "extract_rules",
    "generate_hypotheses",
    "make_request",
    "render_transcript",
    "request_hash",
    "request_repair",
    "suggest_method_stubs",
    "synthesize_programs",
    "transduce_label",
]
