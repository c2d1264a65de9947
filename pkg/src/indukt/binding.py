"""Variable analysis and collision-free substitution."""

from __future__ import annotations

from itertools import count

from .syntax import (
    All,
    And,
    Eq,
    Ex,
    Formula,
    Iff,
    Imp,
    ListExpr,
    Not,
    Or,
    Pred,
    is_var,
    sort_vars,
)

VarSet = frozenset[str]


class CollisionError(ValueError):
    """Raised when a substitution would capture a variable."""


def list_vars(lst: ListExpr) -> VarSet:
    return frozenset(t for t in lst if is_var(t))


def vars_of(f: Formula) -> VarSet:
    match f:
        case Eq(l, r):
            return list_vars(l) | list_vars(r)
        case Pred(_, args):
            return frozenset(t for a in args for t in a if is_var(t))
        case Not(body):
            return vars_of(body)
        case All(v, body) | Ex(v, body):
            return vars_of(body) | {v}
        case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
            return vars_of(a) | vars_of(b)
    raise TypeError(f"not a formula: {f!r}")


def free_of(f: Formula) -> VarSet:
    match f:
        case Eq() | Pred():
            return vars_of(f)
        case Not(body):
            return free_of(body)
        case All(v, body) | Ex(v, body):
            return free_of(body) - {v}
        case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
            return free_of(a) | free_of(b)
    raise TypeError(f"not a formula: {f!r}")


def is_statement(f: Formula) -> bool:
    return not free_of(f)


def subst_list(lst: ListExpr, x: str, mu: ListExpr) -> ListExpr:
    if x not in lst:
        return lst
    out: list[str] = []
    for t in lst:
        if t == x:
            out.extend(mu)
        else:
            out.append(t)
    return tuple(out)


def cf(f: Formula, mu: ListExpr, x: str) -> bool:
    match f:
        case Eq() | Pred():
            return True
        case Not(body):
            return cf(body, mu, x)
        case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
            return cf(a, mu, x) and cf(b, mu, x)
        case All(y, body) | Ex(y, body):
            if x not in free_of(f):
                return True
            return x != y and y not in mu and cf(body, mu, x)
    raise TypeError(f"not a formula: {f!r}")


def _sbf(f: Formula, mu: ListExpr, x: str) -> Formula:
    match f:
        case Eq(l, r):
            return Eq(subst_list(l, x, mu), subst_list(r, x, mu))
        case Pred(name, args):
            return Pred(name, tuple(subst_list(a, x, mu) for a in args))
        case Not(body):
            return Not(_sbf(body, mu, x))
        case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
            return type(f)(_sbf(a, mu, x), _sbf(b, mu, x))
        case All(y, body) | Ex(y, body):
            if x not in free_of(f):
                return f
            return type(f)(y, _sbf(body, mu, x))
    raise TypeError(f"not a formula: {f!r}")


def sbf(f: Formula, mu: ListExpr, x: str) -> Formula:
    """Substitute `mu` for the free occurrences of `x`; raises on capture."""
    if not cf(f, mu, x):
        raise CollisionError(f"substitution for {x} is not collision-free")
    return _sbf(f, mu, x)


def sbf_many(f: Formula, pairs: list[tuple[str, ListExpr]]) -> Formula:
    for x, mu in pairs:
        f = sbf(f, mu, x)
    return f


def rename_fresh(f: Formula, x: str, z: str) -> Formula:
    if z in vars_of(f):
        raise ValueError(f"{z} already occurs in the formula")
    return sbf(f, (z,), x)


def fresh_var(avoid: set[str] | frozenset[str], base: str = "?z") -> str:
    if base not in avoid:
        return base
    for i in count(1):
        cand = f"{base}{i}"
        if cand not in avoid:
            return cand
    raise AssertionError("unreachable")


def free_list(f: Formula) -> tuple[str, ...]:
    return sort_vars(free_of(f))


def gen(f: Formula) -> Formula:
    for v in reversed(free_list(f)):
        f = All(v, f)
    return f


def deg(f: Formula) -> int:
    match f:
        case Eq() | Pred():
            return 0
        case Not(body) | All(_, body) | Ex(_, body):
            return deg(body) + 1
        case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
            return max(deg(a), deg(b)) + 1
    raise TypeError(f"not a formula: {f!r}")


class FragmentError(ValueError):
    """Raised for formulas outside the ¬, →, ∀ fragment."""


def classify(f: Formula) -> str:
    match f:
        case Eq() | Pred():
            return "P"
        case Not(body):
            return "N" + classify(body)
        case Imp(a, b):
            return "I" + classify(a) + classify(b)
        case All(_, body):
            return "A" + classify(body)
    raise FragmentError(f"{type(f).__name__} is outside the ¬,→,∀ fragment")


def rename_bound(f: Formula, avoid: frozenset[str]) -> Formula:
    """Rename every bound variable of `f` that lies in `avoid` to a fresh one."""
    used = set(vars_of(f)) | set(avoid)

    def go(g: Formula) -> Formula:
        match g:
            case Eq() | Pred():
                return g
            case Not(body):
                return Not(go(body))
            case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
                return type(g)(go(a), go(b))
            case All(y, body) | Ex(y, body):
                body = go(body)
                if y in avoid:
                    z = fresh_var(used, "?w")
                    used.add(z)
                    body = sbf(body, (z,), y)
                    y = z
                return type(g)(y, body)
        raise TypeError(f"not a formula: {g!r}")

    return go(f)
