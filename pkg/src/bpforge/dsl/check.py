"""Static validation: entry returns a label, builtins are well-typed."""

from ..raster import METRICS
from . import ast
from .builtins import BOOL, BUILTINS, LABEL, LIST_ELEMENT, MAX_BINDERS, METRIC_ARG, NUM
from .parser import Diagnostic

_ERR = "error"  # poison type so one mistake reports once


def _diag(diags, node, message):
    diags.append(Diagnostic(node.pos[0], node.pos[1], "type", message))
    return _ERR


def _infer(node, env: dict, diags: list) -> str:
    if isinstance(node, ast.Num):
        return NUM
    if isinstance(node, ast.Bool):
        return BOOL
    if isinstance(node, ast.LabelLit):
        return LABEL
    if isinstance(node, ast.Var):
        return env.get(node.name, _ERR)
    if isinstance(node, ast.Metric):
        return METRIC_ARG
    if isinstance(node, ast.Call):
        return _infer_call(node, env, diags)
    if isinstance(node, ast.Unary):
        t = _infer(node.operand, env, diags)
        want = BOOL if node.op == "not" else NUM
        if t not in (want, _ERR):
            return _diag(diags, node, f"'{node.op}' needs a {want} operand, got {t}")
        return want
    if isinstance(node, ast.Binary):
        want = BOOL if node.op in ("and", "or") else NUM
        for side in (node.left, node.right):
            t = _infer(side, env, diags)
            if t not in (want, _ERR):
                return _diag(diags, node, f"'{node.op}' needs {want} operands, got {t}")
        return want
    if isinstance(node, ast.Compare):
        for side in (node.left, node.right):
            t = _infer(side, env, diags)
            if t not in (NUM, _ERR):
                return _diag(diags, node, f"'{node.op}' compares numbers, got {t}")
        return BOOL
    if isinstance(node, ast.If):
        t = _infer(node.cond, env, diags)
        if t not in (BOOL, _ERR):
            _diag(diags, node, f"if-condition must be bool, got {t}")
        t1 = _infer(node.then, env, diags)
        t2 = _infer(node.orelse, env, diags)
        if _ERR in (t1, t2):
            return _ERR
        if t1 != t2:
            return _diag(diags, node, f"if-branches disagree: {t1} vs {t2}")
        return t1
    if isinstance(node, ast.Let):
        t = _infer(node.value, env, diags)
        return _infer(node.body, {**env, node.name: t}, diags)
    if isinstance(node, ast.Quant):
        if len(node.names) > MAX_BINDERS:
            _diag(diags, node, f"at most {MAX_BINDERS} binders per quantifier, got {len(node.names)}")
        if len(set(node.names)) != len(node.names):
            _diag(diags, node, "quantifier binders must be distinct")
        src = _infer(node.source, env, diags)
        elem = LIST_ELEMENT.get(src)
        if elem is None:
            if src != _ERR:
                _diag(diags, node, f"quantifier source must be a list, got {src}")
            elem = _ERR
        inner = {**env, **{n: elem for n in node.names}}
        t = _infer(node.body, inner, diags)
        if t not in (BOOL, _ERR):
            _diag(diags, node, f"quantifier body must be bool, got {t}")
        return NUM if node.kind == "count" else BOOL
    raise TypeError(f"not an AST node: {node!r}")


def _infer_call(node: ast.Call, env, diags) -> str:
    sig = BUILTINS.get(node.name)
    if sig is None:
        return _ERR  # parse-time scope check already reported this
    arg_types, ret, _ = sig
    if len(node.args) != len(arg_types):
        return _diag(diags, node, f"{node.name} takes {len(arg_types)} argument(s), got {len(node.args)}")
    for i, (arg, want) in enumerate(zip(node.args, arg_types)):
        if want == METRIC_ARG:
            if not isinstance(arg, ast.Metric) or arg.name not in METRICS:
                got = arg.name if isinstance(arg, ast.Metric) else "expression"
                _diag(diags, arg if hasattr(arg, "pos") else node, f"unknown metric {got!r}; valid metrics: {', '.join(METRICS)}")
            continue
        t = _infer(arg, env, diags)
        accepted = want if isinstance(want, tuple) else (want,)
        if t not in accepted and t != _ERR:
            _diag(diags, node, f"{node.name} argument {i + 1} must be {' or '.join(accepted)}, got {t}")
    return ret


def validate(p: ast.ClassifierProgram) -> list[Diagnostic]:
    """Empty list iff the program is well-typed and its entry returns a label."""
    diags: list[Diagnostic] = []
    env = {"image": "image"}
    for spec in p.params:
        env[spec.name] = NUM
    t = _infer(p.body, env, diags)
    if t not in (LABEL, _ERR):
        diags.append(Diagnostic(1, 1, "type", f"entry must return Label (POSITIVE or NEGATIVE), got {t}"))
    return diags
