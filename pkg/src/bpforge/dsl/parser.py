"""Recursive-descent parser producing diagnostics with line/column."""

from dataclasses import dataclass

from ..errors import BpforgeError
from . import ast
from .builtins import BUILTINS
from .lexer import LexError, Token, tokenize


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    code: str  # syntax | undeclared-identifier | range | duplicate-param
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.code}: {self.message}"


class ProgramParseError(BpforgeError):
    def __init__(self, diagnostics):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = list(diagnostics)


class _Syntax(Exception):
    def __init__(self, diag: Diagnostic):
        self.diag = diag


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    # -- token helpers ------------------------------------------------------

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        j = min(self.i + offset, len(self.tokens) - 1)
        return self.tokens[j]

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def error(self, expected: str) -> _Syntax:
        tok = self.cur
        got = repr(tok.text) if tok.kind != "EOF" else "end of input"
        return _Syntax(Diagnostic(tok.line, tok.col, "syntax", f"expected {expected}, got {got}"))

    def expect_symbol(self, sym: str) -> Token:
        if self.cur.kind == "SYMBOL" and self.cur.text == sym:
            return self.advance()
        raise self.error(f"'{sym}'")

    def expect_keyword(self, kw: str) -> Token:
        if self.cur.kind == "KEYWORD" and self.cur.text == kw:
            return self.advance()
        raise self.error(f"'{kw}'")

    def expect_name(self, what: str = "identifier") -> Token:
        if self.cur.kind == "NAME":
            return self.advance()
        raise self.error(what)

    def at_keyword(self, *kws) -> bool:
        return self.cur.kind == "KEYWORD" and self.cur.text in kws

    def at_symbol(self, *syms) -> bool:
        return self.cur.kind == "SYMBOL" and self.cur.text in syms

    # -- grammar ------------------------------------------------------------

    def program(self, source: str):
        diags: list[Diagnostic] = []
        params: list[ast.ParamSpec] = []
        seen = set()
        while self.at_keyword("param"):
            spec, name_tok, spec_diags = self.param_decl()
            diags.extend(spec_diags)
            if spec is not None:
                if spec.name in seen:
                    diags.append(
                        Diagnostic(name_tok.line, name_tok.col, "duplicate-param", f"parameter {spec.name!r} declared twice")
                    )
                else:
                    seen.add(spec.name)
                    params.append(spec)
        entry = self.expect_name("'classify_image'")
        if entry.text != "classify_image":
            raise _Syntax(Diagnostic(entry.line, entry.col, "syntax", f"expected 'classify_image', got {entry.text!r}"))
        self.expect_symbol("(")
        arg = self.expect_name("'image'")
        if arg.text != "image":
            raise _Syntax(Diagnostic(arg.line, arg.col, "syntax", f"entry argument must be 'image', got {arg.text!r}"))
        self.expect_symbol(")")
        self.expect_symbol(":=")
        body = self.expr()
        if self.cur.kind != "EOF":
            raise self.error("end of program")
        return ast.ClassifierProgram(source=source, params=tuple(params), body=body), diags

    def param_decl(self):
        self.expect_keyword("param")
        name = self.expect_name("parameter name")
        self.expect_symbol(":")
        if not self.at_keyword("int", "float"):
            raise self.error("'int' or 'float'")
        kind = self.advance().text
        self.expect_keyword("in")
        self.expect_symbol("(")
        low_tok, low = self.signed_number()
        self.expect_symbol(",")
        high_tok, high = self.signed_number()
        self.expect_symbol(")")
        diags = []
        if kind == "int" and not (isinstance(low, int) and isinstance(high, int)):
            diags.append(Diagnostic(low_tok.line, low_tok.col, "range", f"int parameter {name.text!r} needs integer bounds"))
        if low >= high:
            diags.append(
                Diagnostic(low_tok.line, low_tok.col, "range", f"parameter {name.text!r} range ({low}, {high}) needs low < high")
            )
            return None, name, diags
        return ast.ParamSpec(name=name.text, kind=kind, low=low, high=high), name, diags

    def signed_number(self):
        sign = 1
        first = self.cur
        if self.at_symbol("-"):
            self.advance()
            sign = -1
        tok = self.cur
        if tok.kind == "INT":
            self.advance()
            return first, sign * int(tok.text)
        if tok.kind == "FLOAT":
            self.advance()
            return first, sign * float(tok.text)
        raise self.error("number")

    def expr(self):
        if self.at_keyword("if"):
            tok = self.advance()
            cond = self.expr()
            self.expect_keyword("then")
            then = self.expr()
            self.expect_keyword("else")
            orelse = self.expr()
            return ast.If(cond, then, orelse, pos=tok.pos)
        if self.at_keyword("let"):
            tok = self.advance()
            name = self.expect_name("binding name")
            self.expect_symbol("=")
            value = self.expr()
            self.expect_keyword("in")
            body = self.expr()
            return ast.Let(name.text, value, body, pos=tok.pos)
        if self.at_keyword("exists", "forall"):
            tok = self.advance()
            return self.quantifier_tail(tok.text, tok.pos, parenthesized=False)
        return self.or_expr()

    def quantifier_tail(self, kind: str, pos, parenthesized: bool):
        names = [self.expect_name("binder name").text]
        while self.at_symbol(","):
            self.advance()
            names.append(self.expect_name("binder name").text)
        self.expect_keyword("in")
        source = self.expr()
        self.expect_symbol(":")
        body = self.expr()
        node = ast.Quant(kind, tuple(names), source, body, pos=pos)
        if parenthesized:
            self.expect_symbol(")")
        return node

    def or_expr(self):
        node = self.and_expr()
        while self.at_keyword("or"):
            tok = self.advance()
            node = ast.Binary("or", node, self.and_expr(), pos=tok.pos)
        return node

    def and_expr(self):
        node = self.not_expr()
        while self.at_keyword("and"):
            tok = self.advance()
            node = ast.Binary("and", node, self.not_expr(), pos=tok.pos)
        return node

    def not_expr(self):
        if self.at_keyword("not"):
            tok = self.advance()
            return ast.Unary("not", self.not_expr(), pos=tok.pos)
        return self.comparison()

    def comparison(self):
        node = self.additive()
        if self.at_symbol("<", "<=", ">", ">=", "==", "!="):
            tok = self.advance()
            node = ast.Compare(tok.text, node, self.additive(), pos=tok.pos)
        return node

    def additive(self):
        node = self.multiplicative()
        while self.at_symbol("+", "-"):
            tok = self.advance()
            node = ast.Binary(tok.text, node, self.multiplicative(), pos=tok.pos)
        return node

    def multiplicative(self):
        node = self.unary()
        while self.at_symbol("*", "/"):
            tok = self.advance()
            node = ast.Binary(tok.text, node, self.unary(), pos=tok.pos)
        return node

    def unary(self):
        if self.at_symbol("-"):
            tok = self.advance()
            return ast.Unary("-", self.unary(), pos=tok.pos)
        return self.atom()

    def atom(self):
        tok = self.cur
        if tok.kind == "INT":
            self.advance()
            return ast.Num(int(tok.text), pos=tok.pos)
        if tok.kind == "FLOAT":
            self.advance()
            return ast.Num(float(tok.text), pos=tok.pos)
        if self.at_keyword("true", "false"):
            self.advance()
            return ast.Bool(tok.text == "true", pos=tok.pos)
        if self.at_keyword("POSITIVE", "NEGATIVE"):
            self.advance()
            return ast.LabelLit(ast.Label(tok.text), pos=tok.pos)
        if self.at_keyword("count"):
            self.advance()
            self.expect_symbol("(")
            return self.quantifier_tail("count", tok.pos, parenthesized=True)
        if self.at_symbol("("):
            self.advance()
            node = self.expr()
            self.expect_symbol(")")
            return node
        if tok.kind == "NAME":
            self.advance()
            if self.at_symbol("("):
                return self.call(tok)
            return ast.Var(tok.text, pos=tok.pos)
        raise self.error("an expression")

    def call(self, name_tok: Token):
        self.expect_symbol("(")
        args = []
        if not self.at_symbol(")"):
            while True:
                # measure's second argument is a metric name, not a variable
                if name_tok.text == "measure" and len(args) == 1 and self.cur.kind == "NAME":
                    m = self.advance()
                    args.append(ast.Metric(m.text, pos=m.pos))
                else:
                    args.append(self.expr())
                if self.at_symbol(","):
                    self.advance()
                    continue
                break
        self.expect_symbol(")")
        return ast.Call(name_tok.text, tuple(args), pos=name_tok.pos)


def _check_scope(node, bound: set, diags: list):
    if isinstance(node, ast.Var):
        if node.name not in bound:
            diags.append(
                Diagnostic(node.pos[0], node.pos[1], "undeclared-identifier", f"undeclared identifier {node.name!r}")
            )
        return
    if isinstance(node, ast.Call):
        if node.name not in BUILTINS:
            diags.append(
                Diagnostic(node.pos[0], node.pos[1], "undeclared-identifier", f"undeclared identifier {node.name!r}")
            )
        for a in node.args:
            _check_scope(a, bound, diags)
        return
    if isinstance(node, ast.Let):
        _check_scope(node.value, bound, diags)
        _check_scope(node.body, bound | {node.name}, diags)
        return
    if isinstance(node, ast.Quant):
        _check_scope(node.source, bound, diags)
        _check_scope(node.body, bound | set(node.names), diags)
        return
    if isinstance(node, ast.Unary):
        _check_scope(node.operand, bound, diags)
        return
    if isinstance(node, (ast.Binary, ast.Compare)):
        _check_scope(node.left, bound, diags)
        _check_scope(node.right, bound, diags)
        return
    if isinstance(node, ast.If):
        _check_scope(node.cond, bound, diags)
        _check_scope(node.then, bound, diags)
        _check_scope(node.orelse, bound, diags)
        return
    # literals and metric names bind nothing


def try_parse_program(source: str):
    """Parse; returns (program or None, diagnostics)."""
    try:
        tokens = tokenize(source)
    except LexError as e:
        return None, [Diagnostic(e.line, e.col, "syntax", str(e))]
    parser = _Parser(tokens)
    try:
        program, diags = parser.program(source)
    except _Syntax as e:
        return None, [e.diag]
    bound = {"image"} | {p.name for p in program.params}
    _check_scope(program.body, bound, diags)
    if diags:
        return None, diags
    return program, []


def parse_program(source: str) -> ast.ClassifierProgram:
    """Parse or raise ProgramParseError carrying the diagnostic list."""
    program, diags = try_parse_program(source)
    if program is None:
        raise ProgramParseError(diags)
    return program
