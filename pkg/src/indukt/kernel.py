"""Proof checking in mathematical systems [M;L] with Rules (a)-(e)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterator, Union

from .binding import CollisionError, cf, free_of, rename_bound, sbf, sbf_many, vars_of
from .langset import LGrammar, extend_constants, member
from .rsys import RecursiveSystem, eq_schema
from .syntax import (
    All,
    And,
    Ex,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Pred,
    RFormula,
    formula_to_rform,
    imp_chain,
    is_var,
    lists_of,
    pred_pairs,
    rform_to_formula,
    show,
)

ATOM_CAP = 16
HOOKS = frozenset({"pa-is"})


# ---------------------------------------------------------------- systems


@dataclass(frozen=True)
class MathSystem:
    rsys: RecursiveSystem
    alphabet: frozenset[str]
    predicates: frozenset[tuple[str, int]]
    basis: tuple[Formula, ...]
    lang: LGrammar
    adjoined: tuple[tuple[str, Formula], ...] = ()
    hooks: frozenset[str] = frozenset()
    name: str = ""

    def __post_init__(self) -> None:
        unknown = self.hooks - HOOKS
        if unknown:
            raise ValueError(f"unknown schema hook(s): {sorted(unknown)}")

    @property
    def adjoined_map(self) -> dict[str, Formula]:
        return dict(self.adjoined)

    def is_plain(self) -> bool:
        """A_M = A_S, P_M = P_S, B_M = B_S and nothing adjoined."""
        S = self.rsys
        return (
            self.alphabet == S.alphabet
            and self.predicates == S.predicates
            and self.basis == tuple(rform_to_formula(r) for r in S.basis)
            and not self.adjoined
        )

    def adjoin(self, name: str, phi: Formula) -> "MathSystem":
        return adjoin(self, name, phi)

    def extend_alphabet(self, consts: set[str] | frozenset[str]) -> "MathSystem":
        return extend_alphabet(self, consts)

    def without(self, name: str) -> "MathSystem":
        if name not in self.adjoined_map:
            raise KeyError(f"no adjoined statement named {name!r}")
        return replace(self, adjoined=tuple(p for p in self.adjoined if p[0] != name))


def math_system_of(S: RecursiveSystem, L: LGrammar, **kw) -> MathSystem:
    """The system M = [S; A_S; P_S; B_S] over L."""
    return MathSystem(
        S, S.alphabet, S.predicates, tuple(rform_to_formula(r) for r in S.basis), L, **kw
    )


def bad_list(L: LGrammar, f: Formula) -> tuple[str, ...] | None:
    for lst in lists_of(f):
        if not member(L, lst):
            return lst
    return None


def adjoin(M: MathSystem, name: str, phi: Formula) -> MathSystem:
    """Add the statement `phi` as a new axiom, renaming clashing bound variables."""
    if free_of(phi):
        raise ValueError(f"cannot adjoin {name}: not a statement (free {sorted(free_of(phi))})")
    if name in M.adjoined_map:
        raise ValueError(f"{name} is already adjoined")
    bad = bad_list(M.lang, phi)
    if bad is not None:
        raise ValueError(f"cannot adjoin {name}: argument list {' '.join(bad)} is not in L")
    phi = rename_bound(phi, M.rsys.basis_vars())
    return replace(M, adjoined=M.adjoined + ((name, phi),))


def extend_alphabet(M: MathSystem, consts: set[str] | frozenset[str]) -> MathSystem:
    consts = frozenset(consts)
    if not consts:
        return M
    clash = consts & (M.alphabet | M.rsys.alphabet)
    if clash:
        raise ValueError(f"constants clash with the alphabet: {sorted(clash)}")
    if any(is_var(c) for c in consts):
        raise ValueError("constants must not look like variables")
    return replace(M, alphabet=M.alphabet | consts, lang=extend_constants(M.lang, consts))


# ---------------------------------------------------------------- justifications


@dataclass(frozen=True)
class AxTaut:
    pass


@dataclass(frozen=True)
class AxEq:
    pass


@dataclass(frozen=True)
class AxQuant:
    kind: str


@dataclass(frozen=True)
class AxBasis:
    index: int


@dataclass(frozen=True)
class AxAdjoined:
    name: str


@dataclass(frozen=True)
class AxSchema:
    hook: str


@dataclass(frozen=True)
class MP:
    minor: int
    major: int


@dataclass(frozen=True)
class Subst:
    source: int
    var: str
    value: tuple[str, ...]


@dataclass(frozen=True)
class Gen:
    var: str
    source: int


@dataclass(frozen=True)
class Induct:
    pred: str
    arity: int
    xs: tuple[str, ...]
    formula: Formula
    oblig: tuple[tuple[int, int], ...]


Justification = Union[AxTaut, AxEq, AxQuant, AxBasis, AxAdjoined, AxSchema, MP, Subst, Gen, Induct]


def tag(j: Justification) -> str:
    match j:
        case AxTaut():
            return "ax-taut"
        case AxEq():
            return "ax-eq"
        case AxQuant(k):
            return f"ax-quant-{k}"
        case AxBasis():
            return "ax-basis"
        case AxAdjoined():
            return "ax-adjoined"
        case AxSchema(h):
            return f"ax-schema-{h}"
        case MP():
            return "mp"
        case Subst():
            return "subst"
        case Gen():
            return "gen"
        case Induct():
            return "induct"
    raise TypeError(j)


@dataclass(frozen=True)
class Step:
    number: int
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Proof:
    steps: tuple[Step, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    @property
    def conclusion(self) -> Formula | None:
        return self.steps[-1].formula if self.steps else None

    def formula_at(self, n: int) -> Formula:
        for s in self.steps:
            if s.number == n:
                return s.formula
        raise KeyError(n)


@dataclass(frozen=True)
class CheckReport:
    accepted: bool
    failed_step: int | None = None
    reason: str = ""
    stats: dict[str, int] = field(default_factory=dict, compare=False)

    def summary(self) -> str:
        if self.accepted:
            n = sum(self.stats.values())
            return f"accepted: {n} steps"
        return f"rejected at step {self.failed_step}: {self.reason}"


# ---------------------------------------------------------------- tautologies


class AtomCapExceeded(ValueError):
    """The propositional skeleton has more atoms than the checker will table."""


def skeleton_atoms(f: Formula) -> list[Formula]:
    atoms: dict[Formula, None] = {}

    def walk(g: Formula) -> None:
        match g:
            case Not(b):
                walk(b)
            case Imp(a, b) | Iff(a, b) | And(a, b) | Or(a, b):
                walk(a)
                walk(b)
            case _:
                atoms[g] = None

    walk(f)
    return list(atoms)


def is_taut_instance(f: Formula, atom_cap: int = ATOM_CAP) -> bool:
    """True when `f` is an instance of an identically true propositional function."""
    atoms = skeleton_atoms(f)
    n = len(atoms)
    if n > atom_cap:
        raise AtomCapExceeded(f"{n} propositional atoms exceed the cap of {atom_cap}")
    rows = 1 << n
    full = (1 << rows) - 1
    # column k is true exactly on the rows whose bit k is set
    masks: dict[Formula, int] = {}
    for k, a in enumerate(atoms):
        block = (1 << (1 << k)) - 1
        period = block << (1 << k)
        m = 0
        for start in range(0, rows, 1 << (k + 1)):
            m |= period << start
        masks[a] = m & full

    def val(g: Formula) -> int:
        match g:
            case Not(b):
                return full ^ val(b)
            case Imp(a, b):
                return (full ^ val(a)) | val(b)
            case Iff(a, b):
                return full ^ (val(a) ^ val(b))
            case And(a, b):
                return val(a) & val(b)
            case Or(a, b):
                return val(a) | val(b)
        return masks[g]

    return val(f) == full


# ---------------------------------------------------------------- axiom recognizers


def is_eq_axiom(f: Formula) -> bool:
    r = formula_to_rform(f)
    return r is not None and eq_schema(r) is not None


def quant_axiom_kind(f: Formula) -> tuple[str | None, str]:
    """The quantifier-axiom kind of `f` and, when it has none, a reason."""
    match f:
        case Imp(All(x, g), h) if g == h:
            return "a", ""
        case Imp(All(x, Imp(g, h)), Imp(g2, All(x2, h2))) if x == x2 and g == g2 and h == h2:
            if x in free_of(g):
                return None, f"quantifier axiom (3.11)(b): {x[1:]} free in antecedent"
            return "b", ""
        case Iff(Not(All(x, Not(g))), Ex(x2, g2)) if x == x2 and g == g2:
            return "c", ""
    return None, "not a quantifier axiom"


def is_quant_axiom(f: Formula) -> str | None:
    return quant_axiom_kind(f)[0]


def numeral_successor(x: str) -> tuple[str, ...]:
    return ("s", "(", x, ")")


def induction_scheme(g: Formula, x: str) -> Formula:
    """→ ∀x & G(0) → G G(s(x))  ∀x G"""
    step = And(sbf(g, ("0",), x), Imp(g, sbf(g, numeral_successor(x), x)))
    return Imp(All(x, step), All(x, g))


def is_pa_is_instance(f: Formula) -> bool:
    from .transform import theta

    if not (isinstance(f, Imp) and isinstance(f.right, All)):
        return False
    x, g = f.right.var, f.right.body
    try:
        inst = induction_scheme(g, x)
    except CollisionError:
        return False
    return f == inst or f == theta(inst)


def is_basis_axiom(M: MathSystem, f: Formula) -> bool:
    if f in M.basis or f in M.adjoined_map.values():
        return True
    return "pa-is" in M.hooks and is_pa_is_instance(f)


# ---------------------------------------------------------------- Rule (e)


class DisjointnessError(ValueError):
    """Induction variables overlap the variables of the basis R-axioms."""


def build_e_obligations(
    S: RecursiveSystem, p: str, i: int, xs: tuple[str, ...], G: Formula
) -> tuple[tuple[int, Formula], ...]:
    """(axiom index, F') for every basis R-axiom whose conclusion is p i-ary."""
    if len(xs) != i or len(set(xs)) != i or not all(is_var(x) for x in xs):
        raise ValueError(f"need {i} distinct induction variables, got {list(xs)}")
    clash = (set(xs) | vars_of(G)) & S.basis_vars()
    if clash:
        raise DisjointnessError(
            f"Rule (e): {', '.join(sorted(clash))} also occur in the basis R-axioms"
        )

    def image(q):
        if isinstance(q, Pred) and q.name == p and q.arity == i:
            return sbf_many(G, list(zip(xs, q.args)))
        return q

    out = []
    for k, r in enumerate(S.basis, 1):
        c = r.conclusion
        if isinstance(c, Pred) and c.name == p and c.arity == i:
            out.append((k, imp_chain([image(q) for q in r.premises], image(c))))
    return tuple(out)


def induct_conclusion(p: str, xs: tuple[str, ...], G: Formula) -> Formula:
    return Imp(Pred(p, tuple((x,) for x in xs)), G)


def check_induction(M: MathSystem, seen: dict[int, Formula], j: Induct, f: Formula) -> str:
    """Empty string when the Rule (e) step concluding `f` is sound, else the reason."""
    if (j.pred, j.arity) not in M.rsys.predicates:
        return f"Rule (e): {j.pred}/{j.arity} is not a predicate of the recursive system"
    try:
        obligations = build_e_obligations(M.rsys, j.pred, j.arity, j.xs, j.formula)
    except (ValueError, CollisionError) as e:
        return str(e) if str(e).startswith("Rule (e)") else f"Rule (e): {e}"
    given = dict(j.oblig)
    if len(given) != len(j.oblig):
        return "Rule (e): an axiom index is listed twice"
    for k, need in obligations:
        if k not in given:
            return f"Rule (e): missing obligation for basis R-axiom ({k})"
        n = given.pop(k)
        if n not in seen:
            return f"Rule (e): obligation step {n} for basis R-axiom ({k}) does not precede"
        if seen[n] != need:
            return f"Rule (e): step {n} is not the obligation for basis R-axiom ({k}): need {show(need)}"
    if given:
        k = min(given)
        return f"Rule (e): basis R-axiom ({k}) has no obligation for {j.pred}/{j.arity}"
    if f != induct_conclusion(j.pred, j.xs, j.formula):
        return "Rule (e): formula is not → p x̄ G"
    return ""


# ---------------------------------------------------------------- checking


def check_step(M: MathSystem, step: Step, seen: dict[int, Formula], atom_cap: int = ATOM_CAP) -> str:
    f = step.formula
    match step.just:
        case AxTaut():
            try:
                ok = is_taut_instance(f, atom_cap)
            except AtomCapExceeded as e:
                return str(e)
            return "" if ok else "not an identically true propositional function"
        case AxEq():
            return "" if is_eq_axiom(f) else "not an axiom of equality"
        case AxQuant(kind):
            got, why = quant_axiom_kind(f)
            if got is None:
                return why
            return "" if got == kind else f"quantifier axiom is ({got}), not ({kind})"
        case AxBasis(k):
            if not 1 <= k <= len(M.basis):
                return f"no basis axiom {k}"
            return "" if M.basis[k - 1] == f else f"formula differs from basis axiom {k}"
        case AxAdjoined(name):
            phi = M.adjoined_map.get(name)
            if phi is None:
                return f"no adjoined statement named {name}"
            return "" if phi == f else f"formula differs from adjoined statement {name}"
        case AxSchema(hook):
            if hook not in M.hooks:
                return f"schema hook {hook} is not enabled"
            return "" if is_pa_is_instance(f) else "not an instance of the induction scheme"
        case MP(i, k):
            if i not in seen or k not in seen:
                return "Rule (b) cites a step that does not precede it"
            major = seen[k]
            if not isinstance(major, Imp):
                return f"Rule (b): step {k} is not an implication"
            if major.left != seen[i]:
                return f"Rule (b): step {i} is not the antecedent of step {k}"
            return "" if major.right == f else "Rule (b): result does not match"
        case Subst(i, x, lam):
            if i not in seen:
                return "Rule (c) cites a step that does not precede it"
            if not member(M.lang, lam):
                return f"Rule (c): {' '.join(lam) or '(empty)'} is not in L"
            src = seen[i]
            if not cf(src, lam, x):
                return f"Rule (c): substitution for {x} is not collision-free"
            return "" if sbf(src, lam, x) == f else "Rule (c): result does not match the substitution"
        case Gen(x, i):
            if i not in seen:
                return "Rule (d) cites a step that does not precede it"
            return "" if f == All(x, seen[i]) else "Rule (d): result is not ∀x of the cited step"
        case Induct():
            return check_induction(M, seen, step.just, f)
    return f"unknown justification {step.just!r}"


def check_proof(M: MathSystem, P: Proof, atom_cap: int = ATOM_CAP) -> CheckReport:
    seen: dict[int, Formula] = {}
    stats: Counter[str] = Counter()
    last = 0
    for step in P.steps:
        n = step.number
        if n <= last:
            return CheckReport(False, n, "step numbers must increase", dict(stats))
        last = n
        bad = bad_list(M.lang, step.formula)
        if bad is not None:
            return CheckReport(False, n, f"argument list {' '.join(bad) or '(empty)'} is not in L", dict(stats))
        undeclared = pred_pairs(step.formula) - M.predicates
        if undeclared:
            p, a = min(undeclared)
            return CheckReport(False, n, f"undeclared predicate {p}/{a}", dict(stats))
        reason = check_step(M, step, seen, atom_cap)
        if reason:
            return CheckReport(False, n, reason, dict(stats))
        seen[n] = step.formula
        stats[tag(step.just)] += 1
    return CheckReport(True, stats=dict(stats))


def uses(P: Proof) -> set[str]:
    """Names of adjoined statements a proof cites."""
    return {s.just.name for s in P.steps if isinstance(s.just, AxAdjoined)}


__all__ = [
    "ATOM_CAP",
    "AtomCapExceeded",
    "AxAdjoined",
    "AxBasis",
    "AxEq",
    "AxQuant",
    "AxSchema",
    "AxTaut",
    "CheckReport",
    "DisjointnessError",
    "Gen",
    "Induct",
    "Justification",
    "MP",
    "MathSystem",
    "Proof",
    "RFormula",
    "Step",
    "Subst",
    "adjoin",
    "build_e_obligations",
    "check_induction",
    "check_proof",
    "extend_alphabet",
    "induct_conclusion",
    "induction_scheme",
    "is_basis_axiom",
    "is_eq_axiom",
    "is_pa_is_instance",
    "is_quant_axiom",
    "is_taut_instance",
    "math_system_of",
    "quant_axiom_kind",
]
