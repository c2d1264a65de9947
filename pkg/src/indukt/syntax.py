"""Symbols, variables, argument lists, formulas and R-formulas.

A list is a tuple of tokens.  Variables are tokens that start with `?`;
every other token is an alphabet symbol, and `(` / `)` are auxiliary
symbols available in every alphabet.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Union

from .sexpr import ParseError, SExpr, flatten, read_one

ListExpr = tuple[str, ...]
PARENS = frozenset({"(", ")"})


def is_var(tok: str) -> bool:
    return tok.startswith("?")


def is_symbol_token(tok: str) -> bool:
    return bool(tok) and not tok.startswith("?") and not any(c.isspace() for c in tok)


class VariableRegistry:
    """Assigns each variable name a fixed index at first sight."""

    def __init__(self) -> None:
        self._index: dict[str, int] = {}
        self._lock = threading.Lock()

    def declare(self, name: str) -> int:
        if not is_var(name) or len(name) < 2:
            raise ValueError(f"not a variable: {name!r}")
        with self._lock:
            idx = self._index.get(name)
            if idx is None:
                idx = len(self._index)
                self._index[name] = idx
            return idx

    def index(self, name: str) -> int:
        idx = self._index.get(name)
        return idx if idx is not None else self.declare(name)

    def __contains__(self, name: str) -> bool:
        return name in self._index


VARIABLES = VariableRegistry()


def var_index(name: str) -> int:
    return VARIABLES.index(name)


def sort_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=var_index))


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Eq:
    lhs: ListExpr
    rhs: ListExpr


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple[ListExpr, ...]

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class All:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Ex:
    var: str
    body: "Formula"


Prime = Union[Eq, Pred]
Formula = Union[Eq, Pred, Not, Imp, Iff, And, Or, All, Ex]
Binary = (Imp, Iff, And, Or)
Quant = (All, Ex)


@dataclass(frozen=True)
class RFormula:
    premises: tuple[Prime, ...]
    conclusion: Prime


def is_prime(f: Formula) -> bool:
    return isinstance(f, (Eq, Pred))


def imp_chain(premises: Iterable[Formula], conclusion: Formula) -> Formula:
    out = conclusion
    for p in reversed(tuple(premises)):
        out = Imp(p, out)
    return out


def rform_to_formula(r: RFormula) -> Formula:
    return imp_chain(r.premises, r.conclusion)


def formula_to_rform(f: Formula) -> RFormula | None:
    """Read a right-nested chain of primes as an R-formula, or None."""
    premises: list[Prime] = []
    while isinstance(f, Imp):
        if not is_prime(f.left):
            return None
        premises.append(f.left)
        f = f.right
    if not is_prime(f):
        return None
    return RFormula(tuple(premises), f)


# ---------------------------------------------------------------- traversal


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    match f:
        case Not(body) | All(_, body) | Ex(_, body):
            yield from subformulas(body)
        case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
            yield from subformulas(a)
            yield from subformulas(b)


def primes_of(f: Formula) -> Iterator[Prime]:
    return (g for g in subformulas(f) if is_prime(g))


def lists_of(f: Formula) -> Iterator[ListExpr]:
    for p in primes_of(f):
        match p:
            case Eq(l, r):
                yield l
                yield r
            case Pred(_, args):
                yield from args


def pred_pairs(f: Formula) -> set[tuple[str, int]]:
    return {(p.name, p.arity) for p in primes_of(f) if isinstance(p, Pred)}


def map_primes(f: Formula, fn: Callable[[Prime], Formula]) -> Formula:
    match f:
        case Eq() | Pred():
            return fn(f)
        case Not(body):
            return Not(map_primes(body, fn))
        case All(v, body):
            return All(v, map_primes(body, fn))
        case Ex(v, body):
            return Ex(v, map_primes(body, fn))
        case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
            return type(f)(map_primes(a, fn), map_primes(b, fn))
    raise TypeError(f"not a formula: {f!r}")


def map_lists(f: Formula, fn: Callable[[ListExpr], ListExpr]) -> Formula:
    def on_prime(p: Prime) -> Prime:
        if isinstance(p, Eq):
            return Eq(fn(p.lhs), fn(p.rhs))
        return Pred(p.name, tuple(fn(a) for a in p.args))

    return map_primes(f, on_prime)


# ---------------------------------------------------------------- parsing


def _tokens_of_list(items: list[SExpr]) -> ListExpr:
    toks = tuple(flatten(items))
    for t in toks:
        if t in PARENS:
            continue
        if is_var(t):
            if len(t) < 2:
                raise ParseError(f"bad variable token {t!r}")
            VARIABLES.index(t)
        elif not is_symbol_token(t):
            raise ParseError(f"bad list token {t!r}")
    return toks


def list_from_sexpr(expr: SExpr, alphabet: frozenset[str] | None = None) -> ListExpr:
    if not (isinstance(expr, list) and expr and expr[0] == "l"):
        raise ParseError(f"expected (l ...), got {_short(expr)}")
    toks = _tokens_of_list(expr[1:])
    if alphabet is not None:
        for t in toks:
            if not is_var(t) and t not in PARENS and t not in alphabet:
                raise ParseError(f"undeclared symbol {t!r}")
    return toks


def _short(expr: SExpr) -> str:
    from .sexpr import render

    text = render(expr)
    return text if len(text) < 60 else text[:57] + "..."


_BINARY = {"imp": Imp, "iff": Iff, "and": And, "or": Or}
_QUANT = {"all": All, "ex": Ex}


def formula_from_sexpr(expr: SExpr, alphabet: frozenset[str] | None = None) -> Formula:
    if not isinstance(expr, list) or not expr or not isinstance(expr[0], str):
        raise ParseError(f"expected a formula, got {_short(expr)}")
    head, rest = expr[0], expr[1:]
    match head:
        case "eq":
            if len(rest) != 2:
                raise ParseError("eq takes two lists")
            return Eq(list_from_sexpr(rest[0], alphabet), list_from_sexpr(rest[1], alphabet))
        case "pred":
            if not rest or not isinstance(rest[0], str) or is_var(rest[0]):
                raise ParseError("pred needs a predicate name")
            return Pred(rest[0], tuple(list_from_sexpr(a, alphabet) for a in rest[1:]))
        case "not":
            if len(rest) != 1:
                raise ParseError("not takes one formula")
            return Not(formula_from_sexpr(rest[0], alphabet))
        case "imp" | "iff" | "and" | "or":
            if len(rest) != 2:
                raise ParseError(f"{head} takes two formulas")
            return _BINARY[head](
                formula_from_sexpr(rest[0], alphabet), formula_from_sexpr(rest[1], alphabet)
            )
        case "all" | "ex":
            if len(rest) != 2 or not isinstance(rest[0], str) or not is_var(rest[0]):
                raise ParseError(f"{head} takes a variable and a formula")
            VARIABLES.index(rest[0])
            return _QUANT[head](rest[0], formula_from_sexpr(rest[1], alphabet))
        case "horn":
            return rform_to_formula(rform_from_sexpr(expr, alphabet))
    raise ParseError(f"unknown formula head {head!r}")


def rform_from_sexpr(expr: SExpr, alphabet: frozenset[str] | None = None) -> RFormula:
    if isinstance(expr, list) and expr and expr[0] == "horn":
        if len(expr) != 3 or not isinstance(expr[1], list):
            raise ParseError("horn takes a premise list and a conclusion")
        prems = tuple(formula_from_sexpr(p, alphabet) for p in expr[1])
        concl = formula_from_sexpr(expr[2], alphabet)
        r = RFormula(prems, concl)  # type: ignore[arg-type]
        if not all(is_prime(p) for p in (*prems, concl)):
            raise ParseError("horn formulas contain prime formulas only")
        return r
    r = formula_to_rform(formula_from_sexpr(expr, alphabet))
    if r is None:
        raise ParseError(f"not an R-formula: {_short(expr)}")
    return r


def parse_list(text: str, alphabet: frozenset[str] | None = None) -> ListExpr:
    return list_from_sexpr(read_one(text), alphabet)


def parse_formula(text: str, alphabet: frozenset[str] | None = None) -> Formula:
    return formula_from_sexpr(read_one(text), alphabet)


def parse_rform(text: str, alphabet: frozenset[str] | None = None) -> RFormula:
    return rform_from_sexpr(read_one(text), alphabet)


# ---------------------------------------------------------------- printing


def print_list(lst: ListExpr) -> str:
    return "(l" + "".join(" " + t for t in lst) + ")"


def print_formula(f: Formula) -> str:
    match f:
        case Eq(l, r):
            return f"(eq {print_list(l)} {print_list(r)})"
        case Pred(name, args):
            return "(pred " + name + "".join(" " + print_list(a) for a in args) + ")"
        case Not(body):
            return f"(not {print_formula(body)})"
        case Imp(a, b):
            return f"(imp {print_formula(a)} {print_formula(b)})"
        case Iff(a, b):
            return f"(iff {print_formula(a)} {print_formula(b)})"
        case And(a, b):
            return f"(and {print_formula(a)} {print_formula(b)})"
        case Or(a, b):
            return f"(or {print_formula(a)} {print_formula(b)})"
        case All(v, body):
            return f"(all {v} {print_formula(body)})"
        case Ex(v, body):
            return f"(ex {v} {print_formula(body)})"
    raise TypeError(f"not a formula: {f!r}")


def print_rform(r: RFormula) -> str:
    prems = " ".join(print_formula(p) for p in r.premises)
    return f"(horn ({prems}) {print_formula(r.conclusion)})"


def show_list(lst: ListExpr) -> str:
    return "".join(t[1:] if is_var(t) else t for t in lst)


def show(f: Formula) -> str:
    """Prefix notation for humans: `→ D x,y D x0,yy`."""
    match f:
        case Eq(l, r):
            return f"∼{show_list(l)},{show_list(r)}"
        case Pred(name, args):
            return name + (" " + ",".join(show_list(a) for a in args) if args else "")
        case Not(body):
            return "¬" + show(body)
        case Imp(a, b):
            return f"→ {show(a)} {show(b)}"
        case Iff(a, b):
            return f"↔ {show(a)} {show(b)}"
        case And(a, b):
            return f"& {show(a)} {show(b)}"
        case Or(a, b):
            return f"∨ {show(a)} {show(b)}"
        case All(v, body):
            return f"∀{v[1:]} {show(body)}"
        case Ex(v, body):
            return f"∃{v[1:]} {show(body)}"
    raise TypeError(f"not a formula: {f!r}")
