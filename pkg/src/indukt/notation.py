"""Reading the compact prefix notation used for writing proofs by hand.

    → ∼s,t → ∼t,u ∼s,u          ∀x ↔ D x ∃y D x,y          ¬ W f(a)

Connectives and quantifiers are whitespace-separated tokens (a leading
`¬` may be glued to the next token).  An equation is one token `∼λ,μ`;
a predicate name is followed by one token holding its comma-separated
argument lists.  Inside a list every character is one token, letters in
`variables` become variables, and `{tok}` spells a longer token.
"""

from __future__ import annotations

from .syntax import VARIABLES, All, And, Eq, Ex, Formula, Iff, Imp, ListExpr, Not, Or, Pred

BINARY = {"→": Imp, "↔": Iff, "&": And, "∨": Or}
QUANT = {"∀": All, "∃": Ex}


class NotationError(ValueError):
    pass


def read_list(text: str, variables: str | frozenset[str]) -> ListExpr:
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "{":
            j = text.index("}", i)
            out.append(text[i + 1 : j])
            i = j + 1
            continue
        if ch.isspace():
            i += 1
            continue
        out.append("?" + ch if ch in variables else ch)
        i += 1
    for t in out:
        if t.startswith("?"):
            VARIABLES.index(t)
    return tuple(out)


def _var(text: str, variables) -> str:
    if text.startswith("{") and text.endswith("}"):
        return text[1:-1]
    if text not in variables:
        raise NotationError(f"{text!r} is not a declared variable")
    VARIABLES.index("?" + text)
    return "?" + text


def _tokens(text: str) -> list[str]:
    out: list[str] = []
    for chunk in text.split():
        while chunk.startswith("¬") and len(chunk) > 1:
            out.append("¬")
            chunk = chunk[1:]
        out.append(chunk)
    return out


def read_formula(text: str, variables: str | frozenset[str], preds: set[str] | frozenset[str]) -> Formula:
    toks = _tokens(text.replace("~", "∼"))
    pos = 0

    def go() -> Formula:
        nonlocal pos
        if pos >= len(toks):
            raise NotationError(f"formula ends early: {text!r}")
        t = toks[pos]
        pos += 1
        if t == "¬":
            return Not(go())
        if t in BINARY:
            a = go()
            return BINARY[t](a, go())
        if t[0] in QUANT and len(t) > 1:
            v = _var(t[1:], variables)
            return QUANT[t[0]](v, go())
        if t.startswith("∼"):
            parts = t[1:].split(",")
            if len(parts) != 2:
                raise NotationError(f"bad equation {t!r}")
            return Eq(read_list(parts[0], variables), read_list(parts[1], variables))
        if t in preds:
            if pos >= len(toks):
                raise NotationError(f"{t} needs arguments")
            args = toks[pos]
            pos += 1
            return Pred(t, tuple(read_list(a, variables) for a in args.split(",")))
        raise NotationError(f"unexpected token {t!r} in {text!r}")

    f = go()
    if pos != len(toks):
        raise NotationError(f"trailing tokens in {text!r}: {toks[pos:]}")
    return f


class Notation:
    """A reader bound to one system's variable letters and predicate names."""

    def __init__(self, variables: str, preds: set[str] | frozenset[str] | str):
        self.variables = frozenset(variables)
        self.preds = frozenset(preds.split() if isinstance(preds, str) else preds)

    def __call__(self, text: str) -> Formula:
        return read_formula(text, self.variables, self.preds)

    def lst(self, text: str) -> ListExpr:
        return read_list(text, self.variables)
