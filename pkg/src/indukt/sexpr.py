"""A small s-expression reader used by every file format in the package.

Atoms are whitespace-separated tokens; `(` and `)` always delimit lists.
`;` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

SExpr = Union[str, list]

_TOKEN = re.compile(r"\(|\)|;[^\n]*|[^\s();]+")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Token:
    text: str
    line: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line = 1
    pos = 0
    for m in _TOKEN.finditer(text):
        line += text.count("\n", pos, m.start())
        pos = m.start()
        tok = m.group()
        if not tok.startswith(";"):
            tokens.append(Token(tok, line))
    return tokens


def read_all(text: str) -> list[SExpr]:
    """Parse every top-level expression in `text`."""
    tokens = tokenize(text)
    out: list[SExpr] = []
    i = 0
    while i < len(tokens):
        expr, i = _read(tokens, i)
        out.append(expr)
    return out


def read_one(text: str) -> SExpr:
    exprs = read_all(text)
    if len(exprs) != 1:
        raise ParseError(f"expected one expression, found {len(exprs)}")
    return exprs[0]


def _read(tokens: list[Token], i: int) -> tuple[SExpr, int]:
    tok = tokens[i]
    if tok.text == ")":
        raise ParseError("unexpected ')'", tok.line)
    if tok.text != "(":
        return tok.text, i + 1
    items: list[SExpr] = []
    i += 1
    while True:
        if i >= len(tokens):
            raise ParseError("unbalanced parentheses: missing ')'", tok.line)
        if tokens[i].text == ")":
            return items, i + 1
        item, i = _read(tokens, i)
        items.append(item)


def line_of(text: str, needle: str) -> int | None:
    idx = text.find(needle)
    return None if idx < 0 else text.count("\n", 0, idx) + 1


def flatten(items: list[SExpr]) -> list[str]:
    """Turn nested lists back into a flat token stream with explicit parentheses."""
    out: list[str] = []
    for item in items:
        if isinstance(item, list):
            out.append("(")
            out.extend(flatten(item))
            out.append(")")
        else:
            out.append(item)
    return out


def render(expr: SExpr) -> str:
    if isinstance(expr, str):
        return expr
    return "(" + " ".join(render(e) for e in expr) + ")"
