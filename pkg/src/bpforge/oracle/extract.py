"""Response extraction: rules, object lists, code blocks, labels."""

import re

from ..dsl.ast import Label
from ..errors import AmbiguousLabel

_TAG_RE_CACHE: dict = {}
_CODE_BLOCK_RE = re.compile(r"```[ \t]*\w*[ \t]*\n?(.*?)```", re.DOTALL)
_LABEL_RE = re.compile(r"\b(positive|negative)\b", re.IGNORECASE)
_FENCED_LABEL_RE = re.compile(r"```[ \t]*\w*[ \t]*\n?\s*(POSITIVE|NEGATIVE)\s*```", re.IGNORECASE)


def extract_tagged(text: str, tag: str) -> list[str]:
    pattern = _TAG_RE_CACHE.get(tag)
    if pattern is None:
        pattern = re.compile(rf"<{tag}>(.*?)</{tag}>", re.DOTALL | re.IGNORECASE)
        _TAG_RE_CACHE[tag] = pattern
    return [m.strip() for m in pattern.findall(text) if m.strip()]


def extract_rules(text: str) -> list[str]:
    """<rule> contents, deduplicated case-insensitively, order preserved."""
    seen = set()
    rules = []
    for rule in extract_tagged(text, "rule"):
        key = rule.lower()
        if key not in seen:
            seen.add(key)
            rules.append(rule)
    return rules


def extract_objects(text: str, cap: int = 3) -> list[str]:
    """Comma list inside <objects>, snake-cased, capped."""
    blocks = extract_tagged(text, "objects")
    names = []
    for block in blocks:
        for part in block.split(","):
            name = re.sub(r"\s+", "_", part.strip().lower())
            name = re.sub(r"[^a-z0-9_]", "", name)
            if name:
                names.append(name)
    return names[:cap]


def extract_code_blocks(text: str) -> list[str]:
    return [m for m in (block.strip() for block in _CODE_BLOCK_RE.findall(text)) if m]


def extract_label(text: str, strict: bool = False) -> Label:
    """Pull the decision token from a transduction response.

    Strict mode accepts only a fenced POSITIVE/NEGATIVE block. Lenient mode
    scans case-insensitively and the last occurrence wins, because model
    outputs drift around the requested format.
    """
    if strict:
        matches = _FENCED_LABEL_RE.findall(text)
        if not matches:
            raise AmbiguousLabel("no fenced POSITIVE/NEGATIVE block in response")
        return Label(matches[-1].upper())
    matches = _LABEL_RE.findall(text)
    if not matches:
        raise AmbiguousLabel("response contains neither label token")
    return Label(matches[-1].upper())
