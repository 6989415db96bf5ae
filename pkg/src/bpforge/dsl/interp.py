"""Tree-walking evaluator.

Termination is structural: the grammar has no recursion or unbounded
loops, and quantifiers range over finite primitive outputs. Runtime
failures (degenerate geometry, division by zero, sqrt of a negative)
become EvalError; callers treat that as a misclassification, not a crash.
"""

from itertools import permutations

import numpy as np

from ..errors import BindingError, DegenerateGeometry, EvalError, InvalidInput
from ..raster import BinaryImage
from . import ast
from .builtins import IMPLS


def check_bindings(params: tuple[ast.ParamSpec, ...], bindings: dict) -> None:
    declared = {p.name for p in params}
    extra = set(bindings) - declared
    if extra:
        raise BindingError(f"bindings for undeclared parameters: {sorted(extra)}")
    for spec in params:
        if spec.name not in bindings:
            raise BindingError(f"missing binding for parameter {spec.name!r}")
        value = bindings[spec.name]
        if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
            raise BindingError(f"parameter {spec.name!r} must be numeric, got {value!r}")
        if spec.kind == "int" and not float(value).is_integer():
            raise BindingError(f"int parameter {spec.name!r} bound to non-integer {value!r}")
        if not (spec.low <= value <= spec.high):
            raise BindingError(f"parameter {spec.name!r}={value} outside [{spec.low}, {spec.high}]")


def evaluate(p: ast.ClassifierProgram, img: BinaryImage, bindings: dict) -> ast.Label:
    """Run the program's entry on one image under the given parameter bindings."""
    check_bindings(p.params, bindings)
    env = {"image": img}
    for spec in p.params:
        value = bindings[spec.name]
        env[spec.name] = int(value) if spec.kind == "int" else float(value)
    result = _eval(p.body, env)
    if not isinstance(result, ast.Label):
        raise EvalError(f"entry produced {type(result).__name__}, not a label")
    return result


def _eval(node, env):
    if isinstance(node, ast.Num):
        return node.value
    if isinstance(node, ast.Bool):
        return node.value
    if isinstance(node, ast.LabelLit):
        return node.value
    if isinstance(node, ast.Var):
        return env[node.name]
    if isinstance(node, ast.Metric):
        return node.name
    if isinstance(node, ast.Call):
        args = [_eval(a, env) for a in node.args]
        try:
            return IMPLS[node.name](*args)
        except (DegenerateGeometry, InvalidInput, ValueError, ZeroDivisionError, OverflowError) as e:
            raise EvalError(f"{node.name} failed: {e}", pos=node.pos, cause=e) from e
    if isinstance(node, ast.Unary):
        v = _eval(node.operand, env)
        return (not v) if node.op == "not" else -v
    if isinstance(node, ast.Binary):
        if node.op == "and":
            return _eval(node.left, env) and _eval(node.right, env)
        if node.op == "or":
            return _eval(node.left, env) or _eval(node.right, env)
        left = _eval(node.left, env)
        right = _eval(node.right, env)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        try:
            return left / right
        except ZeroDivisionError as e:
            raise EvalError("division by zero", pos=node.pos, cause=e) from e
    if isinstance(node, ast.Compare):
        left = _eval(node.left, env)
        right = _eval(node.right, env)
        if node.op == "<":
            return left < right
        if node.op == "<=":
            return left <= right
        if node.op == ">":
            return left > right
        if node.op == ">=":
            return left >= right
        if node.op == "==":
            return left == right
        return left != right
    if isinstance(node, ast.If):
        return _eval(node.then if _eval(node.cond, env) else node.orelse, env)
    if isinstance(node, ast.Let):
        return _eval(node.body, {**env, node.name: _eval(node.value, env)})
    if isinstance(node, ast.Quant):
        items = _eval(node.source, env)
        k = len(node.names)
        # Ordered tuples of distinct elements, so asymmetric relations
        # (inside, above) are found regardless of list order.
        if node.kind == "exists":
            return any(_eval_quant_body(node, combo, env) for combo in permutations(items, k))
        if node.kind == "forall":
            return all(_eval_quant_body(node, combo, env) for combo in permutations(items, k))
        return sum(1 for combo in permutations(items, k) if _eval_quant_body(node, combo, env))
    raise TypeError(f"not an AST node: {node!r}")


def _eval_quant_body(node, combo, env):
    inner = dict(env)
    for name, value in zip(node.names, combo):
        inner[name] = value
    return _eval(node.body, inner)
