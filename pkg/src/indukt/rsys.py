"""Recursive systems: R-derivations and bounded forward-chaining saturation."""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Union

from .binding import subst_list
from .langset import LGrammar, enumerate_ground, member
from .syntax import (
    Eq,
    ListExpr,
    Pred,
    Prime,
    RFormula,
    is_var,
    print_formula,
    rform_to_formula,
)


@dataclass(frozen=True)
class RecursiveSystem:
    alphabet: frozenset[str]
    predicates: frozenset[tuple[str, int]]
    basis: tuple[RFormula, ...]

    def basis_vars(self) -> frozenset[str]:
        return frozenset(t for r in self.basis for t in _rform_tokens(r) if is_var(t))


def _prime_lists(p: Prime) -> tuple[ListExpr, ...]:
    return (p.lhs, p.rhs) if isinstance(p, Eq) else p.args


def _rform_tokens(r: RFormula) -> Iterator[str]:
    for p in (*r.premises, r.conclusion):
        for lst in _prime_lists(p):
            yield from lst


# ---------------------------------------------------------------- equality schemas


def replaced_once(src: ListExpr, s: ListExpr, t: ListExpr, dst: ListExpr) -> bool:
    """True when dst is src with one contiguous occurrence of s replaced by t."""
    if len(dst) != len(src) - len(s) + len(t):
        return False
    for i in range(len(src) - len(s) + 1):
        if src[i : i + len(s)] == s and dst == src[:i] + t + src[i + len(s) :]:
            return True
    return False


def eq_schema(r: RFormula) -> str | None:
    """Which equality schema `r` instantiates: 'a', 'b', 'c' or None."""
    prems, concl = r.premises, r.conclusion
    if not prems:
        if isinstance(concl, Eq) and concl.lhs == concl.rhs:
            return "a"
        return None
    if len(prems) == 2 and all(isinstance(p, Eq) for p in (*prems, concl)):
        e, st = prems
        s, t = st.lhs, st.rhs
        if concl.lhs == e.lhs and replaced_once(e.rhs, s, t, concl.rhs):
            return "b"
        if concl.rhs == e.rhs and replaced_once(e.lhs, s, t, concl.lhs):
            return "b"
    if isinstance(concl, Pred):
        n = concl.arity
        if len(prems) == n + 1 and isinstance(prems[-1], Pred):
            base = prems[-1]
            eqs = prems[:-1]
            if (
                base.name == concl.name
                and base.arity == n
                and all(isinstance(e, Eq) for e in eqs)
                and all(e.lhs == y and e.rhs == y2 for e, y, y2 in zip(eqs, base.args, concl.args))
            ):
                return "c"
    return None


def is_eq_raxiom(S: RecursiveSystem | None, r: RFormula) -> bool:
    return eq_schema(r) is not None


# ---------------------------------------------------------------- R-derivations


@dataclass(frozen=True)
class RAxiom:
    kind: str  # "basis" or "eq"
    index: int = 0


@dataclass(frozen=True)
class RMP:
    minor: int
    major: int


@dataclass(frozen=True)
class RSubst:
    source: int
    var: str
    value: ListExpr


RJust = Union[RAxiom, RMP, RSubst]


@dataclass(frozen=True)
class RStep:
    number: int
    rform: RFormula
    just: RJust


@dataclass(frozen=True)
class RDerivation:
    steps: tuple[RStep, ...]


@dataclass(frozen=True)
class RReport:
    accepted: bool
    failed_step: int | None = None
    reason: str = ""
    steps: int = 0

    def summary(self) -> str:
        if self.accepted:
            return f"accepted: {self.steps} steps"
        return f"rejected at step {self.failed_step}: {self.reason}"


def subst_rform(r: RFormula, x: str, mu: ListExpr) -> RFormula:
    def one(p: Prime) -> Prime:
        if isinstance(p, Eq):
            return Eq(subst_list(p.lhs, x, mu), subst_list(p.rhs, x, mu))
        return Pred(p.name, tuple(subst_list(a, x, mu) for a in p.args))

    return RFormula(tuple(one(p) for p in r.premises), one(r.conclusion))


def _lists_in_L(L: LGrammar, r: RFormula) -> ListExpr | None:
    for p in (*r.premises, r.conclusion):
        for lst in _prime_lists(p):
            if not member(L, lst):
                return lst
    return None


def check_rderivation(S: RecursiveSystem, L: LGrammar, D: RDerivation) -> RReport:
    seen: dict[int, RFormula] = {}
    last = 0
    for step in D.steps:
        n = step.number
        if n <= last:
            return RReport(False, n, "step numbers must increase")
        last = n
        bad = _lists_in_L(L, step.rform)
        if bad is not None:
            return RReport(False, n, f"argument list {' '.join(bad) or '(empty)'} is not in L")
        for p in (*step.rform.premises, step.rform.conclusion):
            if isinstance(p, Pred) and (p.name, p.arity) not in S.predicates:
                return RReport(False, n, f"undeclared predicate {p.name}/{p.arity}")
        reason = _check_rstep(S, L, step, seen)
        if reason:
            return RReport(False, n, reason)
        seen[n] = step.rform
    return RReport(True, steps=len(D.steps))


def _check_rstep(S: RecursiveSystem, L: LGrammar, step: RStep, seen: dict[int, RFormula]) -> str:
    r = step.rform
    match step.just:
        case RAxiom("basis", k):
            if not 1 <= k <= len(S.basis):
                return f"no basis R-axiom {k}"
            if S.basis[k - 1] != r:
                return f"formula differs from basis R-axiom {k}"
            return ""
        case RAxiom("eq"):
            return "" if eq_schema(r) else "not an equality R-axiom"
        case RMP(i, j):
            if i not in seen or j not in seen:
                return "Rule (b) cites a step that does not precede it"
            minor, major = seen[i], seen[j]
            if minor.premises:
                return f"Rule (b): minor premise (step {i}) is not prime"
            if not major.premises or major.premises[0] != minor.conclusion:
                return f"Rule (b): step {i} is not the first premise of step {j}"
            if RFormula(major.premises[1:], major.conclusion) != r:
                return "Rule (b): result does not match"
            return ""
        case RSubst(i, x, mu):
            if i not in seen:
                return "Rule (c) cites a step that does not precede it"
            if not member(L, mu):
                return f"Rule (c): {' '.join(mu)} is not in L"
            if subst_rform(seen[i], x, mu) != r:
                return "Rule (c): result does not match the substitution"
            return ""
    return f"unknown justification {step.just!r}"


# ---------------------------------------------------------------- saturation


def fact_size(p: Prime) -> int:
    """Size of a ground prime: the length of its longest argument list."""
    lists = _prime_lists(p)
    return max((len(x) for x in lists), default=0)


def monotone_certificate(S: RecursiveSystem) -> bool:
    """No variable occurs more often in a premise than in the conclusion."""
    for r in S.basis:
        concl = Counter(t for lst in _prime_lists(r.conclusion) for t in lst if is_var(t))
        for p in r.premises:
            prem = Counter(t for lst in _prime_lists(p) for t in lst if is_var(t))
            if any(n > concl[v] for v, n in prem.items()):
                return False
    return True


class Verdict(Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Prov:
    kind: str  # "basis", "eqb", "eqc", "refl"
    index: int = 0
    env: tuple[tuple[str, ListExpr], ...] = ()
    premises: tuple[Prime, ...] = ()


class _EqStore:
    """Union-find over argument lists, keeping the merge forest for explanations.

    Each forest edge records why its two lists are equal: either an equation
    concluded by a basis R-axiom, or a single replacement inside a list.
    """

    def __init__(self) -> None:
        self.parent: dict[ListExpr, ListExpr] = {}
        self.members: dict[ListExpr, list[ListExpr]] = {}
        self.adj: dict[ListExpr, list[tuple[ListExpr, int]]] = {}
        self.edges: list[tuple[ListExpr, ListExpr, tuple]] = []

    def add(self, lst: ListExpr) -> None:
        if lst not in self.parent:
            self.parent[lst] = lst
            self.members[lst] = [lst]
            self.adj[lst] = []

    def find(self, lst: ListExpr) -> ListExpr:
        root = lst
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[lst] != root:
            self.parent[lst], lst = root, self.parent[lst]
        return root

    def same(self, a: ListExpr, b: ListExpr) -> bool:
        if a == b:
            return True
        if a not in self.parent or b not in self.parent:
            return False
        return self.find(a) == self.find(b)

    def cls(self, lst: ListExpr) -> list[ListExpr]:
        if lst not in self.parent:
            return [lst]
        return self.members[self.find(lst)]

    def union(self, u: ListExpr, v: ListExpr, why: tuple) -> tuple[list, list] | None:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return None
        a, b = list(self.members[ru]), list(self.members[rv])
        eid = len(self.edges)
        self.edges.append((u, v, why))
        self.adj[u].append((v, eid))
        self.adj[v].append((u, eid))
        if len(self.members[ru]) < len(self.members[rv]):
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.members[ru].extend(self.members.pop(rv))
        return a, b

    def path(self, a: ListExpr, b: ListExpr) -> list[tuple[ListExpr, ListExpr, int]]:
        """The unique forest path from a to b as (from, to, edge) hops."""
        back: dict[ListExpr, tuple[ListExpr, int] | None] = {a: None}
        todo = [a]
        while todo and b not in back:
            nxt = []
            for x in todo:
                for y, eid in self.adj[x]:
                    if y not in back:
                        back[y] = (x, eid)
                        nxt.append(y)
            todo = nxt
        hops = []
        cur = b
        while back[cur] is not None:
            prev, eid = back[cur]  # type: ignore[misc]
            hops.append((prev, cur, eid))
            cur = prev
        return hops[::-1]

    def pairs(self) -> Iterator[Eq]:
        for root in self.members:
            ms = self.members[root]
            if len(ms) > 1:
                for a in ms:
                    for b in ms:
                        if a != b:
                            yield Eq(a, b)

    def count(self) -> int:
        return sum(len(ms) * (len(ms) - 1) for ms in self.members.values())


@dataclass
class FactSet:
    preds: dict[Pred, Prov]
    eqs: _EqStore
    bound: int
    partial: bool
    stats: dict[str, int] = field(default_factory=dict)

    def __contains__(self, p: Prime) -> bool:
        if isinstance(p, Eq):
            return self.eqs.same(p.lhs, p.rhs)
        return p in self.preds

    def __len__(self) -> int:
        return len(self.preds) + self.eqs.count()

    def facts(self) -> Iterator[Prime]:
        """Every derived fact except the reflexive equations."""
        yield from self.preds
        yield from self.eqs.pairs()

    def lines(self) -> list[str]:
        return sorted(print_formula(p) for p in self.facts())

    def derivation(self, S: RecursiveSystem, p: Prime) -> RDerivation:
        return _rebuild(S, self, p)


@dataclass(frozen=True)
class _Rule:
    index: int
    premises: tuple[Prime, ...]
    conclusion: Prime
    variables: tuple[str, ...]


class _Saturator:
    def __init__(self, S: RecursiveSystem, L: LGrammar, bound: int, budget: int, target: Prime | None):
        self.S, self.L, self.bound, self.budget, self.target = S, L, bound, budget, target
        self.preds: dict[Pred, Prov] = {}
        self.by_kind: dict[tuple[str, int], dict[Pred, None]] = {}
        self.by_len: dict[tuple[str, int, int, int], dict[Pred, None]] = {}
        self.arg_occ: dict[ListExpr, dict[tuple[Pred, int], None]] = {}
        self.store = _EqStore()
        self.sub_index: dict[ListExpr, dict[ListExpr, None]] = {}
        self.agenda: list[tuple[int, int, int, object, object]] = []
        self._caps: dict[tuple[int, int], tuple] = {}
        self.seq = 0
        self.firings = 0
        self.partial = False
        self.empty_ok = member(L, ())
        self.rules = [self._compile(i + 1, r) for i, r in enumerate(S.basis)]
        self._ground: list[ListExpr] | None = None
        # without equations in the basis only reflexive ones ever exist
        self.equational = any(isinstance(r.conclusion, Eq) for r in S.basis)
        self.eq_premises = any(isinstance(p, Eq) for r in S.basis for p in r.premises)

    @staticmethod
    def _compile(index: int, r: RFormula) -> _Rule:
        vs: dict[str, None] = {}
        for p in (*r.premises, r.conclusion):
            for lst in _prime_lists(p):
                for t in lst:
                    if is_var(t):
                        vs[t] = None
        return _Rule(index, r.premises, r.conclusion, tuple(vs))

    # -- bookkeeping

    def known(self, p: Prime) -> bool:
        if isinstance(p, Eq):
            return self.store.same(p.lhs, p.rhs)
        return p in self.preds

    def over_budget(self) -> bool:
        if self.firings > self.budget:
            self.partial = True
        return self.partial

    def add(self, p: Prime, prov: Prov) -> None:
        self.firings += 1
        if self.known(p) or fact_size(p) > self.bound:
            return
        if isinstance(p, Pred):
            self.preds[p] = prov
            self.by_kind.setdefault((p.name, p.arity), {})[p] = None
            for k, a in enumerate(p.args):
                self.arg_occ.setdefault(a, {})[(p, k)] = None
                self.by_len.setdefault((p.name, p.arity, k, len(a)), {})[p] = None
        total = sum(len(x) for x in _prime_lists(p))
        self.push(fact_size(p), total, p, prov)

    def push(self, size: int, total: int, item: object, extra: object) -> None:
        heapq.heappush(self.agenda, (size, total, self.seq, item, extra))
        self.seq += 1

    def ground_lists(self) -> list[ListExpr]:
        if self._ground is None:
            self._ground = enumerate_ground(self.L, self.bound)
        return self._ground

    # -- matching

    def match_list(self, pat: ListExpr, ground: ListExpr, env: dict[str, ListExpr]) -> Iterator[dict[str, ListExpr]]:
        yield from self._match(pat, 0, ground, 0, env)

    def _match(self, pat, i, g, j, env) -> Iterator[dict[str, ListExpr]]:
        if i == len(pat):
            if j == len(g):
                yield env
            return
        tok = pat[i]
        if not is_var(tok):
            if j < len(g) and g[j] == tok:
                yield from self._match(pat, i + 1, g, j + 1, env)
            return
        if tok in env:
            val = env[tok]
            if g[j : j + len(val)] == val:
                yield from self._match(pat, i + 1, g, j + len(val), env)
            return
        lo = 0 if self.empty_ok else 1
        rest_min = sum(0 if is_var(t) else 1 for t in pat[i + 1 :])
        for k in range(lo, len(g) - j - rest_min + 1):
            val = g[j : j + k]
            if not member(self.L, val):
                continue
            env2 = dict(env)
            env2[tok] = val
            yield from self._match(pat, i + 1, g, j + k, env2)

    def match_prime(self, pat: Prime, fact: Prime, env: dict[str, ListExpr]) -> Iterator[dict[str, ListExpr]]:
        if isinstance(pat, Eq):
            if not isinstance(fact, Eq):
                return
            pats, gs = (pat.lhs, pat.rhs), (fact.lhs, fact.rhs)
        else:
            if not isinstance(fact, Pred) or fact.name != pat.name or fact.arity != pat.arity:
                return
            pats, gs = pat.args, fact.args
        yield from self._match_all(pats, gs, 0, env)

    def _match_all(self, pats, gs, k, env):
        if k == len(pats):
            yield env
            return
        for env2 in self.match_list(pats[k], gs[k], env):
            yield from self._match_all(pats, gs, k + 1, env2)

    def candidates(self, pat: Prime, env: dict[str, ListExpr], rule: _Rule | None = None, k: int = 0) -> Iterator[Prime]:
        inst = _instantiate(pat, env)
        if inst is not None:
            if self.known(inst):
                yield inst
            return
        if isinstance(pat, Eq):
            for ms in list(self.store.members.values()):
                for a in ms:
                    for b in ms:
                        yield Eq(a, b)
            return
        cap = self.caps(rule, k, env) if rule is not None else None
        if cap is None:
            yield from list(self.by_kind.get((pat.name, pat.arity), {}))
            return
        j, top = cap
        for n in range(top + 1):
            yield from list(self.by_len.get((pat.name, pat.arity, j, n), {}))

    def _cap_table(self, rule: _Rule, k: int) -> tuple:
        key = (rule.index, k)
        if key in self._caps:
            return self._caps[key]
        rows = []
        for j, lst in enumerate(_prime_lists(rule.premises[k])):
            occ = Counter(t for t in lst if is_var(t))
            const = len(lst) - sum(occ.values())
            for c in _prime_lists(rule.conclusion):
                cocc = Counter(t for t in c if is_var(t))
                if any(cocc[v] < n for v, n in occ.items()):
                    continue
                fixed = len(c) - sum(cocc.values())
                others = tuple((v, n) for v, n in cocc.items() if v not in occ)
                rows.append((j, const, occ, fixed, others))
        self._caps[key] = tuple(rows)
        return self._caps[key]

    def caps(self, rule: _Rule, k: int, env: dict[str, ListExpr]) -> tuple[int, int] | None:
        """The tightest (argument position, max length) a candidate for premise k may have.

        If a conclusion list c holds every variable of the premise's j-th list
        at least as often, then |c| grows with that argument's length, so the
        size bound caps it.
        """
        best: tuple[int, int] | None = None
        for j, const, occ, fixed, cocc in self._cap_table(rule, k):
            extra = sum(n * len(env[v]) for v, n in cocc if v in env)
            top = self.bound - fixed - extra + const
            if best is None or top < best[1]:
                best = (j, top)
        return best

    # -- basis R-axioms

    def fire_basis(self, fact: Prime) -> None:
        for rule in self.rules:
            for pos, pat in enumerate(rule.premises):
                for env in self.match_prime(pat, fact, {}):
                    self._join(rule, pos, 0, env, {pos: fact})

    def _join(self, rule: _Rule, skip: int, k: int, env: dict, chosen: dict[int, Prime]) -> None:
        if self.over_budget():
            return
        if k == len(rule.premises):
            self._conclude(rule, env, chosen)
            return
        if k == skip:
            self._join(rule, skip, k + 1, env, chosen)
            return
        pat = rule.premises[k]
        for cand in self.candidates(pat, env, rule, k):
            for env2 in self.match_prime(pat, cand, env):
                self._join(rule, skip, k + 1, env2, {**chosen, k: cand})

    def _conclude(self, rule: _Rule, env: dict, chosen: dict[int, Prime]) -> None:
        free = [v for v in rule.variables if v not in env]
        envs = [env]
        for v in free:
            envs = [{**e, v: g} for e in envs for g in self.ground_lists()]
        for e in envs:
            concl = _instantiate(rule.conclusion, e)
            if concl is None or fact_size(concl) > self.bound:
                continue
            if not all(member(self.L, x) for x in _prime_lists(concl)):
                continue
            prems = tuple(chosen.get(k) or _instantiate(p, e) for k, p in enumerate(rule.premises))
            order = tuple((v, e[v]) for v in rule.variables)
            self.add(concl, Prov("basis", rule.index, order, prems))  # type: ignore[arg-type]

    def fire_axioms(self) -> None:
        for rule in self.rules:
            if not rule.premises:
                self._conclude(rule, {}, {})

    # -- equality R-axioms

    def pool(self, lst: ListExpr) -> None:
        """Make `lst` available as a reflexive context and rewrite it."""
        if lst in self.store.parent:
            return
        self.store.add(lst)
        n = len(lst)
        lo = 0 if self.empty_ok else 1
        for i in range(n + 1):
            for j in range(i + lo, n + 1):
                sub = lst[i:j]
                self.sub_index.setdefault(sub, {})[lst] = None
                if sub in self.store.parent:
                    for t in self.store.cls(sub):
                        if t != sub:
                            self._rewrite(lst, i, sub, t)

    def _rewrite(self, lst: ListExpr, i: int, s: ListExpr, t: ListExpr) -> None:
        self.firings += 1
        new = lst[:i] + t + lst[i + len(s) :]
        if len(new) > self.bound or not member(self.L, new):
            return
        if self.store.same(lst, new):
            return
        self.push(max(len(lst), len(new)), len(lst) + len(new), (lst, new), ("rw", i, s, t))

    def merge(self, u: ListExpr, v: ListExpr, why: tuple) -> None:
        self.pool(u)
        self.pool(v)
        merged = self.store.union(u, v, why)
        if merged is not None:
            self._merged(*merged)

    def _merged(self, A: list[ListExpr], B: list[ListExpr]) -> None:
        for X, Y in ((A, B), (B, A)):
            for a in X:
                for lst in list(self.sub_index.get(a, {})):
                    for i in range(len(lst) - len(a) + 1):
                        if lst[i : i + len(a)] == a:
                            for b in Y:
                                self._rewrite(lst, i, a, b)
                for base, k in list(self.arg_occ.get(a, {})):
                    for b in Y:
                        self._congruent(base, k, Eq(a, b))
                if self.eq_premises:
                    for b in Y:
                        self.fire_basis(Eq(a, b))

    def _congruent(self, base: Pred, k: int, e: Eq) -> None:
        args = base.args[:k] + (e.rhs,) + base.args[k + 1 :]
        self.add(Pred(base.name, args), Prov("eqc", k, (), (base, e)))

    def on_pred(self, fact: Pred) -> None:
        self.fire_basis(fact)
        if not self.equational:
            return
        for a in fact.args:
            self.pool(a)
        for k, a in enumerate(fact.args):
            for b in list(self.store.cls(a)):
                if b != a:
                    self._congruent(fact, k, Eq(a, b))

    def run(self) -> FactSet:
        self.fire_axioms()
        while self.agenda:
            if self.target is not None and self.known(self.target):
                break
            if self.over_budget():
                break
            _, _, _, item, extra = heapq.heappop(self.agenda)
            match item:
                case Eq(lhs, rhs):
                    self.merge(lhs, rhs, ("fact", extra))
                case Pred():
                    self.on_pred(item)
                case (u, v):
                    self.merge(u, v, extra)  # type: ignore[arg-type]
        stats = {
            "facts": len(self.preds) + self.store.count(),
            "firings": self.firings,
            "pool": len(self.store.parent),
        }
        return FactSet(dict(self.preds), self.store, self.bound, self.partial, stats)


def _instantiate(p: Prime, env: dict[str, ListExpr]) -> Prime | None:
    def one(lst: ListExpr) -> ListExpr | None:
        out: list[str] = []
        for t in lst:
            if is_var(t):
                if t not in env:
                    return None
                out.extend(env[t])
            else:
                out.append(t)
        return tuple(out)

    if isinstance(p, Eq):
        l, r = one(p.lhs), one(p.rhs)
        return None if l is None or r is None else Eq(l, r)
    args = [one(a) for a in p.args]
    if any(a is None for a in args):
        return None
    return Pred(p.name, tuple(args))  # type: ignore[arg-type]


DEFAULT_BUDGET = 2_000_000


def saturate(
    S: RecursiveSystem,
    L: LGrammar,
    size_bound: int,
    step_budget: int = DEFAULT_BUDGET,
    target: Prime | None = None,
) -> FactSet:
    """Ground facts derivable with every fact no larger than `size_bound`."""
    return _Saturator(S, L, size_bound, step_budget, target).run()


SLACK = 2


def r_derivable(
    S: RecursiveSystem,
    L: LGrammar,
    p: Prime,
    size_bound: int,
    step_budget: int = DEFAULT_BUDGET,
    facts: FactSet | None = None,
) -> Verdict:
    if isinstance(p, Eq) and p.lhs == p.rhs and member(L, p.lhs):
        return Verdict.TRUE
    if facts is None:
        facts = saturate(S, L, size_bound, step_budget, target=p)
        early = p in facts
        if early:
            return Verdict.TRUE
        return decide_absent(S, facts, p)
    if p in facts:
        return Verdict.TRUE
    return decide_absent(S, facts, p)


def decide_absent(S: RecursiveSystem, facts: FactSet, p: Prime) -> Verdict:
    if facts.partial or not monotone_certificate(S):
        return Verdict.UNKNOWN
    if facts.bound >= fact_size(p) + SLACK:
        return Verdict.FALSE
    return Verdict.UNKNOWN


# ---------------------------------------------------------------- reconstruction


def _rebuild(S: RecursiveSystem, fs: FactSet, goal: Prime) -> RDerivation:
    steps: list[RStep] = []
    done: dict[Prime, int] = {}

    def emit(r: RFormula, just: RJust) -> int:
        n = len(steps) + 1
        steps.append(RStep(n, r, just))
        return n

    def mp_chain(start: int, r: RFormula, premises: tuple[Prime, ...]) -> int:
        cur, cur_r = start, r
        for prem in premises:
            m = derive(prem)
            cur_r = RFormula(cur_r.premises[1:], cur_r.conclusion)
            cur = emit(cur_r, RMP(m, cur))
        return cur

    def by_eq_axiom(premises: tuple[Prime, ...], concl: Prime) -> int:
        r = RFormula(premises, concl)
        return mp_chain(emit(r, RAxiom("eq")), r, premises)

    def from_basis(p: Prime, prov: Prov) -> int:
        for q in prov.premises:
            derive(q)
        r = S.basis[prov.index - 1]
        n = emit(r, RAxiom("basis", prov.index))
        for v, val in prov.env:
            r = subst_rform(r, v, val)
            n = emit(r, RSubst(n, v, val))
        return mp_chain(n, r, prov.premises)

    def hop(u: ListExpr, v: ListExpr, eid: int) -> int:
        """Derive ∼u,v for one forest edge, in either direction."""
        a, b, why = fs.eqs.edges[eid]
        if (a, b) != (u, v):
            derive(Eq(v, u))
            return by_eq_axiom((Eq(v, v), Eq(v, u)), Eq(u, v))
        if why[0] == "fact":
            return from_basis(Eq(u, v), why[1])
        _, _, s, t = why
        return by_eq_axiom((Eq(u, u), Eq(s, t)), Eq(u, v))

    def derive(p: Prime) -> int:
        if p in done:
            return done[p]
        if isinstance(p, Eq):
            if p.lhs == p.rhs:
                n = emit(RFormula((), p), RAxiom("eq"))
            else:
                hops = fs.eqs.path(p.lhs, p.rhs)
                if not hops:
                    raise KeyError(f"{print_formula(p)} is not in the fact set")
                u, v, eid = hops[0]
                n = hop(u, v, eid)
                for u, v, eid in hops[1:]:
                    done[Eq(p.lhs, u)] = n
                    if Eq(u, v) not in done:
                        done[Eq(u, v)] = hop(u, v, eid)
                    n = by_eq_axiom((Eq(p.lhs, u), Eq(u, v)), Eq(p.lhs, v))
        else:
            prov = fs.preds.get(p)
            if prov is None:
                raise KeyError(f"{print_formula(p)} is not in the fact set")
            if prov.kind == "basis":
                n = from_basis(p, prov)
            else:
                base, e = prov.premises
                eqs = tuple(e if i == prov.index else Eq(a, a) for i, a in enumerate(base.args))  # type: ignore[union-attr]
                n = by_eq_axiom((*eqs, base), p)
        done[p] = n
        return n

    derive(goal)
    return RDerivation(tuple(steps))


def rderivation_formulas(D: RDerivation) -> list[str]:
    return [print_formula(rform_to_formula(s.rform)) for s in D.steps]
