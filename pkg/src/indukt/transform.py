"""Proof transformers: Θ, C-elimination, deduction, constant generalization, N₀-relativization."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .binding import fresh_var, free_of, sbf, vars_of
from .kernel import (
    AxAdjoined,
    AxBasis,
    AxEq,
    AxQuant,
    AxSchema,
    AxTaut,
    Gen,
    Induct,
    Justification,
    MP,
    MathSystem,
    Proof,
    Step,
    Subst,
    build_e_obligations,
    check_proof,
    induct_conclusion,
    uses,
)
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
    imp_chain,
    is_var,
    map_lists,
    map_primes,
    pred_pairs,
    rform_to_formula,
    show,
)


class TransformError(ValueError):
    """A transformer precondition does not hold."""


# ---------------------------------------------------------------- building proofs


def _remap(j: Justification, at: Callable[[int], int]) -> Justification:
    match j:
        case MP(i, k):
            return MP(at(i), at(k))
        case Subst(i, x, lam):
            return Subst(at(i), x, lam)
        case Gen(x, i):
            return Gen(x, at(i))
        case Induct(p, n, xs, g, oblig):
            return Induct(p, n, xs, g, tuple((a, at(s)) for a, s in oblig))
    return j


class ProofBuilder:
    """Appends steps and computes the formulas that rules produce."""

    def __init__(self) -> None:
        self.steps: list[Step] = []
        self._at: dict[int, Formula] = {}

    def __len__(self) -> int:
        return len(self.steps)

    def formula(self, n: int) -> Formula:
        return self._at[n]

    def add(self, f: Formula, just: Justification) -> int:
        n = len(self.steps) + 1
        self.steps.append(Step(n, f, just))
        self._at[n] = f
        return n

    def taut(self, f: Formula) -> int:
        return self.add(f, AxTaut())

    def eq(self, f: Formula) -> int:
        return self.add(f, AxEq())

    def quant(self, kind: str, f: Formula) -> int:
        return self.add(f, AxQuant(kind))

    def basis(self, k: int, f: Formula) -> int:
        return self.add(f, AxBasis(k))

    def adjoined(self, name: str, f: Formula) -> int:
        return self.add(f, AxAdjoined(name))

    def mp(self, minor: int, major: int) -> int:
        imp = self._at[major]
        if not isinstance(imp, Imp) or imp.left != self._at[minor]:
            raise TransformError(f"cannot detach step {minor} from step {major}")
        return self.add(imp.right, MP(minor, major))

    def mp_all(self, major: int, *minors: int) -> int:
        for m in minors:
            major = self.mp(m, major)
        return major

    def subst(self, i: int, x: str, lam: ListExpr) -> int:
        return self.add(sbf(self._at[i], tuple(lam), x), Subst(i, x, tuple(lam)))

    def subst_all(self, i: int, pairs: list[tuple[str, ListExpr]]) -> int:
        for x, lam in pairs:
            i = self.subst(i, x, lam)
        return i

    def gen(self, x: str, i: int) -> int:
        return self.add(All(x, self._at[i]), Gen(x, i))

    def induct(self, S, p: str, xs: tuple[str, ...], g: Formula, oblig: dict[int, int]) -> int:
        del S  # the kernel rebuilds the obligations itself
        return self.add(
            induct_conclusion(p, xs, g),
            Induct(p, len(xs), tuple(xs), g, tuple(sorted(oblig.items()))),
        )

    def chain(self, premises: list[int], concl: Formula) -> int:
        """Detach `concl` from proved premises through one tautology."""
        t = self.taut(imp_chain([self._at[i] for i in premises], concl))
        return self.mp_all(t, *premises)

    def include(self, P: Proof) -> dict[int, int]:
        """Copy P's steps and return the renumbering."""
        where: dict[int, int] = {}
        for s in P.steps:
            where[s.number] = self.add(s.formula, _remap(s.just, where.__getitem__))
        return where

    def proof(self) -> Proof:
        return Proof(tuple(self.steps))


def proof_of_rderivation(M: MathSystem, D) -> Proof:
    """Rules (1.11)(a)-(c) are special cases of Rules (a)-(c), so an R-derivation is a proof."""
    from .rsys import RAxiom, RMP, RSubst

    basis = {f: k for k, f in enumerate(M.basis, 1)}
    steps = []
    for s in D.steps:
        f = rform_to_formula(s.rform)
        match s.just:
            case RAxiom("basis", k):
                r = rform_to_formula(M.rsys.basis[k - 1])
                if r not in basis:
                    raise TransformError(f"R-axiom ({k}) is not a basis axiom of the system")
                just = AxBasis(basis[r])
            case RAxiom():
                just = AxEq()
            case RMP(i, j):
                just = MP(i, j)
            case RSubst(i, x, lam):
                just = Subst(i, x, lam)
            case _:
                raise TransformError(f"step {s.number}: unknown R-justification")
        steps.append(Step(s.number, f, just))
    return Proof(tuple(steps))


def renumber(P: Proof) -> Proof:
    b = ProofBuilder()
    b.include(P)
    return b.proof()


def _require_accepted(M: MathSystem, P: Proof, what: str) -> None:
    rep = check_proof(M, P)
    if not rep.accepted:
        raise TransformError(f"{what}: input proof is not accepted ({rep.summary()})")


# ---------------------------------------------------------------- Θ


def theta(f: Formula) -> Formula:
    match f:
        case Eq() | Pred():
            return f
        case Not(b):
            return Not(theta(b))
        case Imp(a, b):
            return Imp(theta(a), theta(b))
        case All(x, b):
            return All(x, theta(b))
        case Or(a, b):
            return Imp(Not(theta(a)), theta(b))
        case And(a, b):
            return Not(Imp(theta(a), Not(theta(b))))
        case Iff(a, b):
            ta, tb = theta(a), theta(b)
            return Not(Imp(Imp(ta, tb), Not(Imp(tb, ta))))
        case Ex(x, b):
            return Not(All(x, Not(theta(b))))
    raise TypeError(f"not a formula: {f!r}")


def theta_system(M: MathSystem) -> MathSystem:
    return replace(
        M,
        basis=tuple(theta(f) for f in M.basis),
        adjoined=tuple((n, theta(f)) for n, f in M.adjoined),
    )


def theta_proof(M: MathSystem, P: Proof) -> Proof:
    """Stepwise Θ image; it checks in theta_system(M)."""
    _require_accepted(M, P, "theta")
    return theta_steps(P)


def theta_steps(P: Proof) -> Proof:
    out = []
    for s in P.steps:
        just = s.just
        match just:
            case AxQuant("c"):
                just = AxTaut()
            case Induct(p, n, xs, g, oblig):
                just = Induct(p, n, xs, theta(g), oblig)
        out.append(Step(s.number, theta(s.formula), just))
    return Proof(tuple(out))


# ---------------------------------------------------------------- C-elimination


@dataclass(frozen=True)
class ContradictionC:
    z: str

    @property
    def formula(self) -> Formula:
        a = All(self.z, Eq((self.z,), (self.z,)))
        return And(a, Not(a))


def contradiction_for(M: MathSystem, avoid: frozenset[str] = frozenset()) -> ContradictionC:
    return ContradictionC(fresh_var(set(M.rsys.basis_vars()) | set(avoid), "?z"))


def c_formula(f: Formula, q: str, j: int, C: ContradictionC) -> Formula:
    c = C.formula

    def hit(p):
        return c if isinstance(p, Pred) and p.name == q and p.arity == j else p

    return map_primes(f, hit)


def _system_pairs(M: MathSystem) -> set[tuple[str, int]]:
    pairs: set[tuple[str, int]] = set()
    for f in (*M.basis, *(rform_to_formula(r) for r in M.rsys.basis), *M.adjoined_map.values()):
        pairs |= pred_pairs(f)
    return pairs


def c_eliminate(M: MathSystem, q: str, j: int, P: Proof, C: ContradictionC | None = None) -> Proof:
    """Replace every j-ary q by the contradiction C throughout an accepted proof."""
    if (q, j) in _system_pairs(M):
        raise TransformError(f"{q}/{j} occurs in the basis axioms")
    _require_accepted(M, P, "c_eliminate")
    C = C or contradiction_for(M, frozenset(_proof_vars(P)))
    if C.z in M.rsys.basis_vars():
        raise TransformError(f"{C.z} occurs in the basis R-axioms")
    out = []
    for s in P.steps:
        f = c_formula(s.formula, q, j, C)
        just = s.just
        match just:
            case Induct(p, n, xs, g, oblig):
                if (p, n) == (q, j):
                    just = AxTaut()
                else:
                    just = Induct(p, n, xs, c_formula(g, q, j, C), oblig)
            case AxEq():
                if f != s.formula:
                    just = AxTaut()
        out.append(Step(s.number, f, just))
    return Proof(tuple(out))


# ---------------------------------------------------------------- deduction


def deduction(M: MathSystem, name: str, P: Proof) -> Proof:
    """From a proof of G in M (with `name` adjoined), a proof of → φ G without it."""
    phi = M.adjoined_map.get(name)
    if phi is None:
        raise TransformError(f"{name} is not adjoined")
    if free_of(phi):
        raise TransformError(f"{name} is not a statement")
    clash = vars_of(phi) & M.rsys.basis_vars()
    if clash:
        raise TransformError(f"{name} shares variables {sorted(clash)} with the basis R-axioms")
    _require_accepted(M, P, "deduction")
    if not P.steps:
        raise TransformError("deduction needs a non-empty proof")
    b = ProofBuilder()
    if name not in uses(P):
        where = b.include(P)
        g = P.steps[-1].formula
        b.chain([where[P.steps[-1].number]], Imp(phi, g))
        return b.proof()

    d: dict[int, int] = {}
    for s in P.steps:
        f = s.formula
        match s.just:
            case AxAdjoined(n) if n == name:
                d[s.number] = b.taut(Imp(phi, phi))
            case AxTaut() | AxEq() | AxQuant() | AxBasis() | AxAdjoined() | AxSchema():
                k = b.add(f, s.just)
                d[s.number] = b.chain([k], Imp(phi, f))
            case MP(i, k):
                d[s.number] = b.chain([d[i], d[k]], Imp(phi, f))
            case Subst(i, x, lam):
                d[s.number] = b.subst(d[i], x, lam)
            case Gen(x, i):
                g = b.gen(x, d[i])
                ax = b.quant("b", Imp(b.formula(g), Imp(phi, f)))
                d[s.number] = b.mp(g, ax)
            case Induct(p, n, xs, g0, oblig):
                g1 = Imp(phi, g0)
                need = dict(build_e_obligations(M.rsys, p, n, xs, g1))
                new_oblig = {}
                for k, step_no in oblig:
                    new_oblig[k] = b.chain([d[step_no]], need[k])
                concl = b.induct(M.rsys, p, xs, g1, new_oblig)
                pre = Pred(p, tuple((x,) for x in xs))
                d[s.number] = b.chain([concl], Imp(phi, Imp(pre, g0)))
            case _:
                raise TransformError(f"step {s.number}: unsupported justification")
    return b.proof()


# ---------------------------------------------------------------- constants


def generalize_constants(M: MathSystem, mapping: dict[str, str], P: Proof) -> Proof:
    """Replace constant symbols by fresh variables throughout a proof."""
    for c, v in mapping.items():
        if not is_var(v):
            raise TransformError(f"{v} is not a variable")
        if c in M.rsys.alphabet:
            raise TransformError(f"{c} belongs to the recursive system")
        for f in (*M.basis, *(rform_to_formula(r) for r in M.rsys.basis)):
            if any(c in lst for lst in _lists(f)):
                raise TransformError(f"constant {c} occurs in the basis axioms")
    used = _proof_vars(P)
    taken = set(mapping.values()) & (used | M.rsys.basis_vars())
    if taken:
        raise TransformError(f"variables {sorted(taken)} are not fresh")
    if len(set(mapping.values())) != len(mapping):
        raise TransformError("constants must map to distinct variables")

    def fix(lst: ListExpr) -> ListExpr:
        return tuple(mapping.get(t, t) for t in lst)

    def fix_f(f: Formula) -> Formula:
        return map_lists(f, fix)

    out = []
    for s in P.steps:
        just = s.just
        match just:
            case Subst(i, x, lam):
                just = Subst(i, x, fix(lam))
            case Induct(p, n, xs, g, oblig):
                just = Induct(p, n, xs, fix_f(g), oblig)
        out.append(Step(s.number, fix_f(s.formula), just))
    return Proof(tuple(out))


def _lists(f: Formula):
    from .syntax import lists_of

    return lists_of(f)


def _proof_vars(P: Proof) -> set[str]:
    used: set[str] = set()
    for s in P.steps:
        used |= vars_of(s.formula)
        match s.just:
            case Subst(_, x, lam):
                used.add(x)
                used |= {t for t in lam if is_var(t)}
            case Gen(x, _):
                used.add(x)
            case Induct(_, _, xs, g, _):
                used |= set(xs) | vars_of(g)
    return used


# ---------------------------------------------------------------- N₀-relativization


def occurrence_order(f: Formula) -> tuple[str, ...]:
    """Free variables of `f` in order of first occurrence, left to right."""
    seen: dict[str, None] = {}

    def walk(g: Formula, bound: frozenset[str]) -> None:
        match g:
            case Eq(l, r):
                for t in (*l, *r):
                    if is_var(t) and t not in bound:
                        seen.setdefault(t)
            case Pred(_, args):
                for a in args:
                    for t in a:
                        if is_var(t) and t not in bound:
                            seen.setdefault(t)
            case Not(b):
                walk(b, bound)
            case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
                walk(a, bound)
                walk(b, bound)
            case All(x, b) | Ex(x, b):
                walk(b, bound | {x})

    walk(f, frozenset())
    return tuple(seen)


def relativize_gamma(f: Formula, pred: str = "N0") -> Callable[[Formula], Formula]:
    """The wrapper → N₀ x₁ … → N₀ xₙ · over the free variables of `f`."""
    xs = occurrence_order(f)

    def wrap(body: Formula) -> Formula:
        return imp_chain([Pred(pred, ((x,),)) for x in xs], body)

    return wrap


def relativize_psi(f: Formula, pred: str = "N0") -> Formula:
    match f:
        case Eq() | Pred():
            return f
        case Not(b):
            return Not(relativize_psi(b, pred))
        case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
            return type(f)(relativize_psi(a, pred), relativize_psi(b, pred))
        case All(x, b):
            return All(x, Imp(Pred(pred, ((x,),)), relativize_psi(b, pred)))
        case Ex(x, b):
            return Ex(x, And(Pred(pred, ((x,),)), relativize_psi(b, pred)))
    raise TypeError(f"not a formula: {f!r}")


def relativize(f: Formula, pred: str = "N0") -> Formula:
    """Γ(F) applied to Ψ(F)."""
    return relativize_gamma(f, pred)(relativize_psi(f, pred))


def strip_relativization(f: Formula, pred: str = "N0") -> Formula:
    """Inverse of relativize on its image."""
    while (
        isinstance(f, Imp)
        and isinstance(f.left, Pred)
        and f.left.name == pred
        and len(f.left.args) == 1
        and len(f.left.args[0]) == 1
        and f.left.args[0][0] in free_of(f.right)
    ):
        f = f.right

    def go(g: Formula) -> Formula:
        match g:
            case All(x, Imp(Pred(p, ((y,),)), b)) if p == pred and y == x:
                return All(x, go(b))
            case Ex(x, And(Pred(p, ((y,),)), b)) if p == pred and y == x:
                return Ex(x, go(b))
            case Not(b):
                return Not(go(b))
            case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
                return type(g)(go(a), go(b))
        return g

    return go(f)


__all__ = [
    "ContradictionC",
    "ProofBuilder",
    "TransformError",
    "c_eliminate",
    "c_formula",
    "contradiction_for",
    "deduction",
    "generalize_constants",
    "occurrence_order",
    "relativize",
    "relativize_gamma",
    "relativize_psi",
    "renumber",
    "show",
    "strip_relativization",
    "theta",
    "theta_proof",
    "theta_system",
]
