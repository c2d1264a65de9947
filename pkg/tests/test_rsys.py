from dataclasses import replace

import pytest

from indukt.rsys import (
    RMP,
    RDerivation,
    RecursiveSystem,
    Verdict,
    check_rderivation,
    is_eq_raxiom,
    monotone_certificate,
    r_derivable,
    saturate,
)
from indukt.syntax import Eq, Pred, RFormula, formula_to_rform


def D(*args):
    return Pred("D", tuple(tuple(a) for a in args))


def test_eq_raxiom_examples(nd, ns):
    assert is_eq_raxiom(None, formula_to_rform(nd("→ ∼x,y → ∼y,u ∼x,u")))
    assert is_eq_raxiom(None, formula_to_rform(ns("→ ∼x,y → N0 x N0 y")))
    assert not is_eq_raxiom(None, formula_to_rform(nd("→ ∼x,y ∼y,x")))
    assert is_eq_raxiom(None, formula_to_rform(nd("∼x0,x0")))
    assert not is_eq_raxiom(None, formula_to_rform(nd("∼x0,x")))


def replacement_oracle(r: RFormula) -> bool:
    """Try every position on both sides of the first premise."""
    match r.premises, r.conclusion:
        case (), Eq(l, rr):
            return l == rr
        case (Eq() as e, Eq() as st), Eq() as c:
            s, t = st.lhs, st.rhs
            for keep, side, other in ((e.lhs, e.rhs, c.rhs), (e.rhs, e.lhs, c.lhs)):
                if (c.lhs if keep is e.lhs else c.rhs) != keep:
                    continue
                for i in range(len(side) + 1):
                    if side[i : i + len(s)] == s and side[:i] + t + side[i + len(s) :] == other:
                        return True
            return False
        case prems, Pred(name, args) if prems and isinstance(prems[-1], Pred):
            base, eqs = prems[-1], prems[:-1]
            return (
                base.name == name
                and len(eqs) == len(args) == len(base.args)
                and all(isinstance(e, Eq) and (e.lhs, e.rhs) == (a, b) for e, a, b in zip(eqs, base.args, args))
            )
    return False


@pytest.mark.parametrize("stem", ["reverse-1-53", "reverse-1-120"])
def test_equality_steps_of_the_reversal_proofs(proofs, stem):
    labelled = {7, 9, 14, 28, 37, 87, 90}
    P = proofs[stem]
    seen = set()
    for s in P.steps:
        if s.number in labelled:
            r = formula_to_rform(s.formula)
            assert r is not None
            assert is_eq_raxiom(None, r) and replacement_oracle(r), s.number
            seen.add(s.number)
    assert seen == {n for n in labelled if n <= len(P.steps)}


def test_oracle_rejects_what_the_matcher_rejects(nd):
    for text in ["→ ∼x,y ∼y,x", "→ ∼xa,y → ∼a,b ∼xb,yb", "→ ∼x,y → D x D u", "→ ∼x,y → ∼y,u ∼u,x"]:
        r = formula_to_rform(nd(text))
        assert not is_eq_raxiom(None, r) and not replacement_oracle(r), text


def test_golden_derivation(systems, rproofs):
    M = systems["dual"]
    rep = check_rderivation(M.rsys, M.lang, rproofs["dual-101"])
    assert rep.accepted and rep.steps == 9


def test_mutated_minor_premise(systems, rproofs):
    M = systems["dual"]
    D = rproofs["dual-101"]
    steps = list(D.steps)
    steps[5] = replace(steps[5], just=RMP(2, 5))
    rep = check_rderivation(M.rsys, M.lang, RDerivation(tuple(steps)))
    assert not rep.accepted and rep.failed_step == 6


def test_empty_derivation(systems):
    M = systems["dual"]
    assert check_rderivation(M.rsys, M.lang, RDerivation(())).accepted


def test_spa_golden(systems, rproofs):
    M = systems["spa"]
    assert check_rderivation(M.rsys, M.lang, rproofs["spa-2plus"]).accepted


def test_saturate_dual(systems):
    M = systems["dual"]
    fs = saturate(M.rsys, M.lang, 12)
    assert not fs.partial
    assert D("101", "aaaaa") in fs
    assert D("0") not in fs
    assert D("1", "aa") not in fs


@pytest.mark.parametrize("name,top", [("dual", 9), ("spa", 10), ("reverse", 7)])
def test_saturation_is_monotone(systems, name, top):
    M = systems[name]
    prev = set()
    for n in range(2, top + 1):
        now = set(saturate(M.rsys, M.lang, n).facts())
        assert prev <= now, n
        prev = now


@pytest.mark.parametrize("name,bound", [("dual", 8), ("spa", 8), ("reverse", 6)])
def test_every_fact_has_a_checked_derivation(systems, name, bound):
    M = systems[name]
    fs = saturate(M.rsys, M.lang, bound)
    facts = list(fs.facts())
    assert facts
    for p in facts:
        rep = check_rderivation(M.rsys, M.lang, fs.derivation(M.rsys, p))
        assert rep.accepted, (p, rep.summary())


def test_saturate_is_deterministic(systems):
    M = systems["spa"]
    assert saturate(M.rsys, M.lang, 9).lines() == saturate(M.rsys, M.lang, 9).lines()


@pytest.mark.slow
def test_reverse_bound_14(systems):
    M = systems["reverse"]
    goal = Eq(tuple("f(abaab)"), tuple("baaba"))
    fs = saturate(M.rsys, M.lang, 14, 10**8, target=goal)
    assert goal in fs
    assert check_rderivation(M.rsys, M.lang, fs.derivation(M.rsys, goal)).accepted


def test_reverse_small_reversal(systems):
    M = systems["reverse"]
    goal = Eq(tuple("f(ab)"), tuple("ba"))
    assert r_derivable(M.rsys, M.lang, goal, 8) is Verdict.TRUE


def test_r_derivable(systems):
    dual, spa = systems["dual"], systems["spa"]
    assert r_derivable(dual.rsys, dual.lang, D("101", "aaaaa"), 12) is Verdict.TRUE
    zero = Eq(tuple("s(0)"), ("0",))
    assert r_derivable(spa.rsys, spa.lang, zero, 12) is Verdict.FALSE
    huge = D("1" * 30)
    assert r_derivable(dual.rsys, dual.lang, huge, 12) is Verdict.UNKNOWN
    assert r_derivable(dual.rsys, dual.lang, D("0"), 12) is Verdict.FALSE


def test_partial_saturation_is_unknown(systems):
    M = systems["dual"]
    fs = saturate(M.rsys, M.lang, 12, step_budget=10)
    assert fs.partial
    assert r_derivable(M.rsys, M.lang, D("0"), 12, facts=fs) is Verdict.UNKNOWN


def test_certificate(systems):
    assert monotone_certificate(systems["dual"].rsys)
    assert monotone_certificate(systems["reverse"].rsys)
    shrink = RecursiveSystem(
        frozenset({"0"}),
        frozenset({("D", 1)}),
        (RFormula((D(("?x", "?x")),), D(("?x",))),),
    )
    assert not monotone_certificate(shrink)
