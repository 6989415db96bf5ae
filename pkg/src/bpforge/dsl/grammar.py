"""Rendered grammar help.

Embedded in oracle prompts so the model emits valid programs. Built from
the builtin table, so it never drifts from the implementation; the text
is deterministic and names each builtin exactly once.
"""

from .builtins import (
    BOOL,
    BUILTINS,
    COMPONENT,
    COMPONENT_LIST,
    CONTOUR,
    IMAGE,
    METRIC_ARG,
    NUM,
    POINT,
    POINT_LIST,
)

_TYPE_SHORT = {
    IMAGE: "img",
    COMPONENT: "rgn",
    COMPONENT_LIST: "rgns",
    CONTOUR: "bnd",
    POINT: "pt",
    POINT_LIST: "pts",
    NUM: "num",
    BOOL: "bool",
    METRIC_ARG: "metric",
}

_HEADER = """\
The classification language, briefly:

PROGRAM SHAPE
  param <name> : <int|float> in (<low>, <high>)   -- one line per tunable parameter
  classify_image(image) := <expression>

The entry expression must produce POSITIVE or NEGATIVE. Parameters are
numeric, declared with an inclusive range, and tuned automatically; do
not hard-code threshold constants, declare them as parameters instead.

EXPRESSIONS
  if <cond> then <a> else <b>
  let <name> = <value> in <body>
  exists x in <list-expr> : <predicate>
  forall x in <list-expr> : <predicate>
  count(x in <list-expr> : <predicate>)
  Quantifiers accept up to three comma-separated binders ranging over
  ordered tuples of distinct elements.
  Arithmetic: + - * /   comparisons: < <= > >= == !=   logic: and or not
  Literals: numbers, true, false, POSITIVE, NEGATIVE. Comments start with #.

BUILTINS (img is the panel; rgn/rgns are regions; bnd is a boundary;
pt/pts are 2-D locations; num is a scalar)
"""


def _signature(name: str, arg_types, ret) -> str:
    rendered = []
    for t in arg_types:
        if isinstance(t, tuple):
            rendered.append(" | ".join(_TYPE_SHORT[u] for u in t))
        else:
            rendered.append(_TYPE_SHORT[t])
    return f"{name}({', '.join(rendered)}) -> {_TYPE_SHORT[ret]}"


def render_grammar_help() -> str:
    lines = [_HEADER]
    width = max(
        len(_signature(name, args, ret)) for name, (args, ret, _) in BUILTINS.items()
    )
    for name, (args, ret, desc) in BUILTINS.items():
        sig = _signature(name, args, ret)
        lines.append(f"  {sig:<{width}}  {desc}")
    return "\n".join(lines) + "\n"
