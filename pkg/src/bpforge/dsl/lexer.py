"""Tokenizer for the classification DSL."""

from dataclasses import dataclass

KEYWORDS = frozenset(
    {
        "param",
        "int",
        "float",
        "in",
        "let",
        "if",
        "then",
        "else",
        "and",
        "or",
        "not",
        "exists",
        "forall",
        "count",
        "true",
        "false",
        "POSITIVE",
        "NEGATIVE",
    }
)

_SYMBOLS = (":=", "<=", ">=", "==", "!=", "(", ")", ",", ":", "<", ">", "+", "-", "*", "/", "=")


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, FLOAT, KEYWORD, SYMBOL, EOF
    text: str
    line: int
    col: int

    @property
    def pos(self):
        return (self.line, self.col)


class LexError(Exception):
    def __init__(self, message, line, col):
        super().__init__(message)
        self.line = line
        self.col = col


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            text = source[start:i]
            kind = "KEYWORD" if text in KEYWORDS else "NAME"
            tokens.append(Token(kind, text, line, col))
            col += i - start
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            start = i
            is_float = False
            while i < n and source[i].isdigit():
                i += 1
            if i < n and source[i] == ".":
                is_float = True
                i += 1
                while i < n and source[i].isdigit():
                    i += 1
            if i < n and source[i] in "eE":
                j = i + 1
                if j < n and source[j] in "+-":
                    j += 1
                if j < n and source[j].isdigit():
                    is_float = True
                    i = j
                    while i < n and source[i].isdigit():
                        i += 1
            text = source[start:i]
            tokens.append(Token("FLOAT" if is_float else "INT", text, line, col))
            col += i - start
            continue
        for sym in _SYMBOLS:
            if source.startswith(sym, i):
                tokens.append(Token("SYMBOL", sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise LexError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens
