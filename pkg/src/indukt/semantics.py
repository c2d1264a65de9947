"""Bounded three-valued evaluation of statements.

Prime formulas are true when R-derivable.  They are false only when a
saturation that was large enough finished under the monotone certificate.
Quantifiers range over the ground lists of L up to `list_size` tokens.

Inside a statement the quantifiers are evaluated soundly: ∀ is False on
a counterexample and ∃ is True on a witness, otherwise Unknown.  The
leading ∀-prefix of the statement (the part `gen` adds) is the bounded
claim being tested, so it is True when every enumerated instance is True.
"""

from __future__ import annotations

from dataclasses import dataclass

from .binding import free_of, gen
from .kernel import MathSystem, bad_list
from .langset import enumerate_ground, member
from .rsys import (
    DEFAULT_BUDGET,
    SLACK,
    FactSet,
    Verdict,
    fact_size,
    monotone_certificate,
    saturate,
)
from .syntax import All, And, Eq, Ex, Formula, Iff, Imp, ListExpr, Not, Or, Pred, is_var

TV3 = Verdict
T, F, U = Verdict.TRUE, Verdict.FALSE, Verdict.UNKNOWN


@dataclass(frozen=True)
class EvalBounds:
    list_size: int = 6
    depth_budget: int = DEFAULT_BUDGET  # saturation firings per bound
    fact_size: int = 12  # largest prime that is ever saturated for
    instances: int = 2_000_000  # quantifier instances per statement

    def __post_init__(self) -> None:
        if min(self.list_size, self.depth_budget, self.fact_size, self.instances) <= 0:
            raise ValueError("bounds must be positive")


class EvalError(ValueError):
    pass


def _template(lst: ListExpr) -> tuple[object, ...]:
    """Runs of constants as tuples, variables as names."""
    out: list[object] = []
    run: list[str] = []
    for t in lst:
        if is_var(t):
            if run:
                out.append(tuple(run))
                run = []
            out.append(t)
        else:
            run.append(t)
    if run:
        out.append(tuple(run))
    return tuple(out)


def _compile(p: Eq | Pred):
    temps = tuple(_template(x) for x in _lists(p))

    def build(env: dict[str, ListExpr]) -> tuple[ListExpr, ...]:
        out = []
        for temp in temps:
            lst: tuple[str, ...] = ()
            for piece in temp:
                if isinstance(piece, str):
                    if piece not in env:
                        raise EvalError(f"unbound variable {piece}")
                    lst += env[piece]
                else:
                    lst += piece
            out.append(lst)
        return tuple(out)

    if isinstance(p, Eq):
        return lambda env: Eq(*build(env))
    name = p.name
    return lambda env: Pred(name, build(env))


def _lists(p: Eq | Pred) -> tuple[ListExpr, ...]:
    return (p.lhs, p.rhs) if isinstance(p, Eq) else p.args


def neg(a: Verdict) -> Verdict:
    return {T: F, F: T, U: U}[a]


def conj(a: Verdict, b: Verdict) -> Verdict:
    if F in (a, b):
        return F
    return T if a is T and b is T else U


def disj(a: Verdict, b: Verdict) -> Verdict:
    return neg(conj(neg(a), neg(b)))


def implies(a: Verdict, b: Verdict) -> Verdict:
    return disj(neg(a), b)


def equiv(a: Verdict, b: Verdict) -> Verdict:
    return conj(implies(a, b), implies(b, a))


class Evaluator:
    """Caches saturations per size bound and prime verdicts for one system."""

    def __init__(self, M: MathSystem, B: EvalBounds = EvalBounds()):
        self.M, self.B = M, B
        self.universe: tuple[ListExpr, ...] = tuple(enumerate_ground(M.lang, B.list_size))
        self._facts: dict[int, FactSet] = {}
        self.certified = monotone_certificate(M.rsys)
        self.check_members = True
        self._compiled: dict[Formula, object] = {}
        self.spent = 0
        self.stats = {"primes": 0, "saturations": 0}

    def facts(self, need: int) -> FactSet:
        fs = self._facts.get(need)
        if fs is None:
            ready = [b for b in self._facts if b >= need]
            if ready:
                fs = self._facts[min(ready)]
            else:
                fs = saturate(self.M.rsys, self.M.lang, need, self.B.depth_budget)
                self.stats["saturations"] += 1
            self._facts[need] = fs
        return fs

    def _leaf(self, p: Eq | Pred):
        fn = self._compiled.get(p)
        if fn is None:
            fn = self._compiled[p] = _compile(p)
        return fn

    def prime(self, p: Eq | Pred) -> Verdict:
        self.stats["primes"] += 1
        if isinstance(p, Eq) and p.lhs == p.rhs:
            return T
        need = fact_size(p) + SLACK
        if need > self.B.fact_size:
            return U
        fs = self.facts(need)
        if p in fs:
            return T
        return F if self.certified and not fs.partial else U

    def statement(self, f: Formula) -> Verdict:
        if free_of(f):
            raise EvalError("not a statement: free variables " + " ".join(sorted(free_of(f))))
        # ground instances of L-lists stay in L, so one check up front usually suffices
        self.check_members = bad_list(self.M.lang, f) is not None
        self.spent = 0
        return self.value(f, {}, True)

    def value(self, f: Formula, env: dict[str, ListExpr], prefix: bool = False) -> Verdict:
        match f:
            case Eq() | Pred():
                g = self._leaf(f)(env)
                if self.check_members and not all(member(self.M.lang, x) for x in _lists(g)):
                    return F  # outside Π_R(S;L)
                return self.prime(g)
            case Not(a):
                return neg(self.value(a, env))
            case Imp(a, b):
                left = self.value(a, env)
                return T if left is F else implies(left, self.value(b, env))
            case And(a, b):
                left = self.value(a, env)
                return F if left is F else conj(left, self.value(b, env))
            case Or(a, b):
                left = self.value(a, env)
                return T if left is T else disj(left, self.value(b, env))
            case Iff(a, b):
                return equiv(self.value(a, env), self.value(b, env))
            case All(x, body):
                return self._all(x, body, env, prefix)
            case Ex(x, body):
                return self._ex(x, body, env)
        raise EvalError(f"not a formula: {f!r}")

    def _instances(self, x: str, env: dict[str, ListExpr]):
        for lam in self.universe:
            self.spent += 1
            if self.spent > self.B.instances:
                return
            yield {**env, x: lam}

    def _all(self, x, body, env, prefix: bool) -> Verdict:
        seen, acc = 0, T
        for inner in self._instances(x, env):
            seen += 1
            v = self.value(body, inner, prefix)
            if v is F:
                return F
            if v is U:
                acc = U
        if seen < len(self.universe) or not self.universe:
            return U
        return acc if prefix else U

    def _ex(self, x, body, env) -> Verdict:
        for inner in self._instances(x, env):
            if self.value(body, inner) is T:
                return T
        return U


def eval_prime(M: MathSystem, p: Eq | Pred, B: EvalBounds = EvalBounds()) -> Verdict:
    if free_of(p):
        raise EvalError("prime formula is not ground")
    if not all(member(M.lang, x) for x in _lists(p)):
        return F
    return Evaluator(M, B).prime(p)


def eval_statement(M: MathSystem, f: Formula, B: EvalBounds = EvalBounds(), ev: Evaluator | None = None) -> Verdict:
    return (ev or Evaluator(M, B)).statement(f)


def eval_gen(M: MathSystem, f: Formula, B: EvalBounds = EvalBounds(), ev: Evaluator | None = None) -> Verdict:
    return eval_statement(M, gen(f), B, ev)

