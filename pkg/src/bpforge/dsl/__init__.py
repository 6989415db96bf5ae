"""Parser, validator, and interpreter for the closed classification DSL.

Programs are a list of ``param`` declarations plus a single
``classify_image(image) := <expression>`` entry. Evaluation is pure,
deterministic, and guaranteed to terminate.
"""

from .ast import ClassifierProgram, Label, ParamSpec, StubDecl, format_expr, format_program
from .check import validate
from .grammar import render_grammar_help
from .interp import evaluate
from .parser import Diagnostic, ProgramParseError, parse_program, try_parse_program

__all__ = [
    "ClassifierProgram",
    "Diagnostic",
    "Label",
    "ParamSpec",
    "ProgramParseError",
    "StubDecl",
    "evaluate",
    "format_expr",
    "format_program",
    "parse_program",
    "render_grammar_help",
    "try_parse_program",
    "validate",
]
