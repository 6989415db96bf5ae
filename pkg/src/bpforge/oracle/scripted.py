"""Built-in deterministic responder for ``--backend scripted``.

A no-network demo oracle: it maps rule keywords to stock programs from a
small template table and answers transduction queries with NEGATIVE. It
exists so the CLI can be exercised end to end offline; tests script their
own responders instead.
"""

import re

from .chat import OracleRequest

_RULE_RE = re.compile(r"represent the concept (.+?)\.\n", re.DOTALL)
_STUB_RULE_RE = re.compile(r"positive concept (.+?) and 'NEGATIVE'", re.DOTALL)

_TEMPLATES = (
    (
        ("line", "length", "stroke", "ink"),
        "param length_threshold : float in (1, 2000)\n"
        "classify_image(image) :=\n"
        "  if total_ink_length(image) > length_threshold / 1000 then POSITIVE else NEGATIVE\n",
    ),
    (
        ("collinear", "line up", "straight"),
        "param distance_threshold : float in (1.0, 5.0)\n"
        "classify_image(image) :=\n"
        "  if approx_collinear(centroids(image), distance_threshold) then POSITIVE else NEGATIVE\n",
    ),
    (
        ("many", "count", "number", "several", "few"),
        "param count_threshold : int in (1, 12)\n"
        "classify_image(image) :=\n"
        "  if size(components(image)) > count_threshold then POSITIVE else NEGATIVE\n",
    ),
    (
        ("elongated", "stretched", "thin"),
        "param elongation_threshold : float in (1.5, 20.0)\n"
        "classify_image(image) :=\n"
        "  if exists c in components(image) : measure(contour(c), elongation) > elongation_threshold\n"
        "  then POSITIVE else NEGATIVE\n",
    ),
    (
        ("large", "big", "small", "size"),
        "param area_threshold : float in (10, 4000)\n"
        "classify_image(image) :=\n"
        "  if exists c in components(image) : pixel_count(c) > area_threshold\n"
        "  then POSITIVE else NEGATIVE\n",
    ),
)

_DEFAULT_PROGRAM = (
    "param ink_threshold : float in (0.01, 3.0)\n"
    "classify_image(image) :=\n"
    "  if total_ink_length(image) > ink_threshold then POSITIVE else NEGATIVE\n"
)


def _programs_for(rule: str) -> list[str]:
    rule = rule.lower()
    hits = [body for keywords, body in _TEMPLATES if any(k in rule for k in keywords)]
    return hits or [_DEFAULT_PROGRAM]


class DemoResponder:
    """Callable request -> response text; fully deterministic."""

    def __call__(self, req: OracleRequest) -> str:
        if req.purpose == "stubs":
            return "<objects>figure</objects>"
        if req.purpose == "hypotheses":
            rules = (
                "large total line length",
                "many separate figures",
                "contains an elongated figure",
                "three points are approximately collinear",
                "large figures",
                "all ink forms a single connected figure",
            )
            return "\n".join(f"<rule>{r}</rule>" for r in rules)
        if req.purpose in ("synthesis", "repair"):
            text = "\n".join(t.text for t in req.turns)
            m = _RULE_RE.search(text) or _STUB_RULE_RE.search(text)
            rule = m.group(1) if m else ""
            return "\n\n".join(f"```\n{p}```" for p in _programs_for(rule))
        return "```NEGATIVE```"
