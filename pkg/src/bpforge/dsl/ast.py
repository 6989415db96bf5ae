"""AST node types, parameter specs, and the canonical printer.

Node equality ignores source positions, so ``parse(format(ast))`` compares
structurally equal to ``ast``.
"""

import enum
from dataclasses import dataclass, field

Pos = tuple[int, int]  # (line, col), 1-based
_NOPOS: Pos = (0, 0)


class Label(enum.Enum):
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ParamSpec:
    """One tunable parameter: name, numeric kind, inclusive range."""

    name: str
    kind: str  # "int" | "float"
    low: float
    high: float


@dataclass(frozen=True)
class StubDecl:
    """A suggested detector (object name plus its doc contract)."""

    object_name: str
    doc: str


@dataclass(frozen=True)
class Num:
    value: float
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class Bool:
    value: bool
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class LabelLit:
    value: Label
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class Metric:
    """A measure-metric name; syntactically an identifier, never a variable."""

    name: str
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class Unary:
    op: str  # "-" | "not"
    operand: object
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class Binary:
    op: str  # "+" | "-" | "*" | "/" | "and" | "or"
    left: object
    right: object
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class Compare:
    op: str  # "<" | "<=" | ">" | ">=" | "==" | "!="
    left: object
    right: object
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class If:
    cond: object
    then: object
    orelse: object
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class Let:
    name: str
    value: object
    body: object
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class Quant:
    kind: str  # "exists" | "forall" | "count"
    names: tuple[str, ...]
    source: object
    body: object
    pos: Pos = field(default=_NOPOS, compare=False, repr=False)


@dataclass(frozen=True)
class ClassifierProgram:
    """A parsed program: entry ``classify_image(image)`` over declared params."""

    source: str
    params: tuple[ParamSpec, ...]
    body: object

    def param_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)


# ---------------------------------------------------------------------------
# Canonical printer

_PREC_OR = 2
_PREC_AND = 3
_PREC_NOT = 4
_PREC_CMP = 5
_PREC_ADD = 6
_PREC_MUL = 7
_PREC_NEG = 8
_PREC_ATOM = 9

_BIN_PREC = {"or": _PREC_OR, "and": _PREC_AND, "+": _PREC_ADD, "-": _PREC_ADD, "*": _PREC_MUL, "/": _PREC_MUL}


def _num_text(value) -> str:
    if isinstance(value, int):
        return str(value)
    text = repr(float(value))
    return text


def format_expr(node, prec: int = 0) -> str:
    """Render an expression; parenthesized only where precedence requires."""
    if isinstance(node, Num):
        return _num_text(node.value)
    if isinstance(node, Bool):
        return "true" if node.value else "false"
    if isinstance(node, LabelLit):
        return node.value.value
    if isinstance(node, (Var, Metric)):
        return node.name
    if isinstance(node, Call):
        args = ", ".join(format_expr(a) for a in node.args)
        return f"{node.name}({args})"
    if isinstance(node, Unary):
        if node.op == "not":
            text = f"not {format_expr(node.operand, _PREC_NOT)}"
            return f"({text})" if prec > _PREC_NOT else text
        text = f"-{format_expr(node.operand, _PREC_NEG)}"
        return f"({text})" if prec > _PREC_NEG else text
    if isinstance(node, Binary):
        p = _BIN_PREC[node.op]
        left = format_expr(node.left, p)
        right = format_expr(node.right, p + 1)  # left-associative
        text = f"{left} {node.op} {right}"
        return f"({text})" if prec > p else text
    if isinstance(node, Compare):
        left = format_expr(node.left, _PREC_CMP + 1)
        right = format_expr(node.right, _PREC_CMP + 1)
        text = f"{left} {node.op} {right}"
        return f"({text})" if prec > _PREC_CMP else text
    if isinstance(node, If):
        text = (
            f"if {format_expr(node.cond)} then {format_expr(node.then)} "
            f"else {format_expr(node.orelse)}"
        )
        return f"({text})" if prec > 0 else text
    if isinstance(node, Let):
        text = f"let {node.name} = {format_expr(node.value)} in {format_expr(node.body)}"
        return f"({text})" if prec > 0 else text
    if isinstance(node, Quant):
        binders = ", ".join(node.names)
        inner = f"{binders} in {format_expr(node.source)} : {format_expr(node.body)}"
        if node.kind == "count":
            return f"count({inner})"
        text = f"{node.kind} {inner}"
        return f"({text})" if prec > 0 else text
    raise TypeError(f"not an AST node: {node!r}")


def format_program(p: ClassifierProgram) -> str:
    lines = []
    for spec in p.params:
        low = _num_text(int(spec.low) if spec.kind == "int" else float(spec.low))
        high = _num_text(int(spec.high) if spec.kind == "int" else float(spec.high))
        lines.append(f"param {spec.name} : {spec.kind} in ({low}, {high})")
    if lines:
        lines.append("")
    lines.append("classify_image(image) :=")
    lines.append(f"  {format_expr(p.body)}")
    return "\n".join(lines) + "\n"
