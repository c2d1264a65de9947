"""Write the golden corpus files under src/indukt/corpus.

Step formulas are transcribed one by one in the prefix notation of
`indukt.notation`; the kernel, not this script, decides whether they
are valid.  Run from the repository root:  python tools/gen_corpus.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from indukt.files import load_system, proof_to_text, rderivation_to_text
from indukt.kernel import (
    AxAdjoined,
    AxBasis,
    AxEq,
    AxQuant,
    AxTaut,
    Gen,
    MP,
    Proof,
    Step,
    Subst,
    check_proof,
)
from indukt.notation import Notation
from indukt.rsys import RAxiom, RDerivation, RMP, RStep, RSubst, check_rderivation
from indukt.syntax import formula_to_rform, print_formula
from indukt.transform import ProofBuilder

CORPUS = Path(__file__).resolve().parent.parent / "src" / "indukt" / "corpus"


def table(nt: Notation, rows) -> Proof:
    """Rows are (number, formula, justification) in the short forms below."""
    steps = []
    for n, text, j in rows:
        steps.append(Step(n, nt(text), just(nt, j)))
    return Proof(tuple(steps))


def just(nt: Notation, j):
    match j:
        case ("basis", k):
            return AxBasis(k)
        case ("eq",):
            return AxEq()
        case ("taut",):
            return AxTaut()
        case ("quant", k):
            return AxQuant(k)
        case ("adj", name):
            return AxAdjoined(name)
        case ("mp", i, k):
            return MP(i, k)
        case ("subst", i, x, lam):
            return Subst(i, "?" + x, nt.lst(lam))
        case ("gen", x, i):
            return Gen("?" + x, i)
    raise ValueError(j)


# ---------------------------------------------------------------- dual system


def dual_101() -> RDerivation:
    nt = Notation("xy", "D")
    rows = [
        (1, "D 1,a", RAxiom("basis", 4)),
        (2, "→ D x,y D x0,yy", RAxiom("basis", 5)),
        (3, "→ D x,y D x1,yya", RAxiom("basis", 6)),
        (4, "→ D 1,y D 10,yy", RSubst(2, "?x", ("1",))),
        (5, "→ D 1,a D 10,aa", RSubst(4, "?y", ("a",))),
        (6, "D 10,aa", RMP(1, 5)),
        (7, "→ D 10,y D 101,yya", RSubst(3, "?x", ("1", "0"))),
        (8, "→ D 10,aa D 101,aaaaa", RSubst(7, "?y", ("a", "a"))),
        (9, "D 101,aaaaa", RMP(6, 8)),
    ]
    return RDerivation(tuple(RStep(n, formula_to_rform(nt(t)), j) for n, t, j in rows))


def spa_2plus() -> RDerivation:
    nt = Notation("xy", "N0")
    rows = [
        (1, "N0 0", RAxiom("basis", 1)),
        (2, "→ N0 x N0 s(x)", RAxiom("basis", 2)),
        (3, "→ N0 0 N0 s(0)", RSubst(2, "?x", ("0",))),
        (4, "N0 s(0)", RMP(1, 3)),
        (5, "→ N0 x → N0 y ∼+(s(x)y),s(+(xy))", RAxiom("basis", 4)),
        (6, "→ N0 0 → N0 y ∼+(s(0)y),s(+(0y))", RSubst(5, "?x", ("0",))),
        (7, "→ N0 0 → N0 s(0) ∼+(s(0)s(0)),s(+(0s(0)))", RSubst(6, "?y", nt.lst("s(0)"))),
        (8, "→ N0 s(0) ∼+(s(0)s(0)),s(+(0s(0)))", RMP(1, 7)),
        (9, "∼+(s(0)s(0)),s(+(0s(0)))", RMP(4, 8)),
        (10, "→ N0 x ∼+(0x),x", RAxiom("basis", 3)),
        (11, "→ N0 s(0) ∼+(0s(0)),s(0)", RSubst(10, "?x", nt.lst("s(0)"))),
        (12, "∼+(0s(0)),s(0)", RMP(4, 11)),
        (13, "→ ∼+(s(0)s(0)),s(+(0s(0))) → ∼+(0s(0)),s(0) ∼+(s(0)s(0)),s(s(0))", RAxiom("eq")),
        (14, "→ ∼+(0s(0)),s(0) ∼+(s(0)s(0)),s(s(0))", RMP(9, 13)),
        (15, "∼+(s(0)s(0)),s(s(0))", RMP(12, 14)),
    ]
    return RDerivation(tuple(RStep(n, formula_to_rform(nt(t)), j) for n, t, j in rows))


# ---------------------------------------------------------------- quantifier examples


def example1() -> Proof:
    nt = Notation("x", "W")
    F = "→ W x W f(x)"
    return table(
        nt,
        [
            (1, f"→ ∀x ¬ {F} ¬ {F}", ("quant", "a")),
            (2, f"→ → ∀x ¬ {F} ¬ {F} → {F} ¬ ∀x ¬ {F}", ("taut",)),
            (3, f"→ {F} ¬ ∀x ¬ {F}", ("mp", 1, 2)),
            (4, f"↔ ¬ ∀x ¬ {F} ∃x {F}", ("quant", "c")),
            (5, f"→ → {F} ¬ ∀x ¬ {F} → ↔ ¬ ∀x ¬ {F} ∃x {F} → {F} ∃x {F}", ("taut",)),
            (6, f"→ ↔ ¬ ∀x ¬ {F} ∃x {F} → {F} ∃x {F}", ("mp", 3, 5)),
            (7, f"→ {F} ∃x {F}", ("mp", 4, 6)),
        ],
    )


def example2() -> Proof:
    nt = Notation("x", "W")
    F, G = "W x", "W f(x)"
    AF, AFG = f"∀x {F}", f"∀x → {F} {G}"
    return table(
        nt,
        [
            (1, f"→ {AF} {F}", ("quant", "a")),
            (2, f"→ {AFG} → {F} {G}", ("quant", "a")),
            (3, f"→ → {AF} {F} → → {AFG} → {F} {G} → {AFG} → {AF} {G}", ("taut",)),
            (4, f"→ → {AFG} → {F} {G} → {AFG} → {AF} {G}", ("mp", 1, 3)),
            (5, f"→ {AFG} → {AF} {G}", ("mp", 2, 4)),
            (6, f"∀x → {AFG} → {AF} {G}", ("gen", "x", 5)),
            (7, f"→ ∀x → {AFG} → {AF} {G} → {AFG} ∀x → {AF} {G}", ("quant", "b")),
            (8, f"→ {AFG} ∀x → {AF} {G}", ("mp", 6, 7)),
            (9, f"→ ∀x → {AF} {G} → {AF} ∀x {G}", ("quant", "b")),
            (
                10,
                f"→ → {AFG} ∀x → {AF} {G} → → ∀x → {AF} {G} → {AF} ∀x {G} → {AFG} → {AF} ∀x {G}",
                ("taut",),
            ),
            (11, f"→ → ∀x → {AF} {G} → {AF} ∀x {G} → {AFG} → {AF} ∀x {G}", ("mp", 8, 10)),
            (12, f"→ {AFG} → {AF} ∀x {G}", ("mp", 9, 11)),
        ],
    )


def example3() -> Proof:
    nt = Notation("x", "W")
    return table(
        nt,
        [
            (1, "→ ∀x → ∼x,a ∼x,a → ∼x,a ∀x ∼x,a", ("quant", "b")),
            (2, "→ ∼x,a ∼x,a", ("taut",)),
            (3, "∀x → ∼x,a ∼x,a", ("gen", "x", 2)),
            (4, "→ ∼x,a ∀x ∼x,a", ("mp", 3, 1)),
            (5, "→ ∼a,a ∀x ∼x,a", ("subst", 4, "x", "a")),
            (6, "∼x,x", ("eq",)),
            (7, "∼a,a", ("subst", 6, "x", "a")),
            (8, "∀x ∼x,a", ("mp", 7, 5)),
        ],
    )


# ---------------------------------------------------------------- reversal


def G(l: str) -> str:
    return f"& & W {l} W f({l}) ∼f(f({l})),{l}"


REV = Notation("xystuv", "W")

REVERSE_1_53 = [
    (1, "W a", ("basis", 1)),
    (2, "W b", ("basis", 2)),
    (3, "→ W x → W y W xy", ("basis", 3)),
    (4, "∼f(a),a", ("basis", 4)),
    (5, "∼f(b),b", ("basis", 5)),
    (6, "→ W x → W y ∼f(xy),f(y)f(x)", ("basis", 6)),
    (7, "∼x,x", ("eq",)),
    (8, "∼f(s),f(s)", ("subst", 7, "x", "f(s)")),
    (9, "→ ∼f(s),f(s) → ∼s,t ∼f(s),f(t)", ("eq",)),
    (10, "→ ∼s,t ∼f(s),f(t)", ("mp", 8, 9)),
    (11, "→ ∼f(a),t ∼f(f(a)),f(t)", ("subst", 10, "s", "f(a)")),
    (12, "→ ∼f(a),a ∼f(f(a)),f(a)", ("subst", 11, "t", "a")),
    (13, "∼f(f(a)),f(a)", ("mp", 4, 12)),
    (14, "→ ∼s,t → ∼t,u ∼s,u", ("eq",)),
    (15, "→ ∼f(f(a)),t → ∼t,u ∼f(f(a)),u", ("subst", 14, "s", "f(f(a))")),
    (16, "→ ∼f(f(a)),f(a) → ∼f(a),u ∼f(f(a)),u", ("subst", 15, "t", "f(a)")),
    (17, "→ ∼f(f(a)),f(a) → ∼f(a),a ∼f(f(a)),a", ("subst", 16, "u", "a")),
    (18, "→ ∼f(a),a ∼f(f(a)),a", ("mp", 13, 17)),
    (19, "∼f(f(a)),a", ("mp", 4, 18)),
    (20, "→ ∼f(b),t ∼f(f(b)),f(t)", ("subst", 10, "s", "f(b)")),
    (21, "→ ∼f(b),b ∼f(f(b)),f(b)", ("subst", 20, "t", "b")),
    (22, "∼f(f(b)),f(b)", ("mp", 5, 21)),
    (23, "→ ∼f(f(b)),t → ∼t,u ∼f(f(b)),u", ("subst", 14, "s", "f(f(b))")),
    (24, "→ ∼f(f(b)),f(b) → ∼f(b),u ∼f(f(b)),u", ("subst", 23, "t", "f(b)")),
    (25, "→ ∼f(f(b)),f(b) → ∼f(b),b ∼f(f(b)),b", ("subst", 24, "u", "b")),
    (26, "→ ∼f(b),b ∼f(f(b)),b", ("mp", 22, 25)),
    (27, "∼f(f(b)),b", ("mp", 5, 26)),
    (28, "→ ∼s,s → ∼s,t ∼t,s", ("eq",)),
    (29, "∼s,s", ("eq",)),
    (30, "→ ∼s,t ∼t,s", ("mp", 29, 28)),
    (31, "→ ∼f(a),t ∼t,f(a)", ("subst", 30, "s", "f(a)")),
    (32, "→ ∼f(a),a ∼a,f(a)", ("subst", 31, "t", "a")),
    (33, "∼a,f(a)", ("mp", 4, 32)),
    (34, "→ ∼f(b),t ∼t,f(b)", ("subst", 30, "s", "f(b)")),
    (35, "→ ∼f(b),b ∼b,f(b)", ("subst", 34, "t", "b")),
    (36, "∼b,f(b)", ("mp", 5, 35)),
    (37, "→ ∼s,t → W s W t", ("eq",)),
    (38, "→ ∼a,t → W a W t", ("subst", 37, "s", "a")),
    (39, "→ ∼a,f(a) → W a W f(a)", ("subst", 38, "t", "f(a)")),
    (40, "→ W a W f(a)", ("mp", 33, 39)),
    (41, "W f(a)", ("mp", 1, 40)),
    (42, "→ ∼b,t → W b W t", ("subst", 37, "s", "b")),
    (43, "→ ∼b,f(b) → W b W f(b)", ("subst", 42, "t", "f(b)")),
    (44, "→ W b W f(b)", ("mp", 36, 43)),
    (45, "W f(b)", ("mp", 2, 44)),
    (46, f"→ W a → W f(a) → ∼f(f(a)),a {G('a')}", ("taut",)),
    (47, f"→ W f(a) → ∼f(f(a)),a {G('a')}", ("mp", 1, 46)),
    (48, f"→ ∼f(f(a)),a {G('a')}", ("mp", 41, 47)),
    (49, G("a"), ("mp", 19, 48)),
    (50, f"→ W b → W f(b) → ∼f(f(b)),b {G('b')}", ("taut",)),
    (51, f"→ W f(b) → ∼f(f(b)),b {G('b')}", ("mp", 2, 50)),
    (52, f"→ ∼f(f(b)),b {G('b')}", ("mp", 45, 51)),
    (53, G("b"), ("mp", 27, 52)),
]

REVERSE_54_120 = [
    (54, G("c"), ("adj", "phi1")),
    (55, G("d"), ("adj", "phi2")),
    (56, f"→ {G('c')} W c", ("taut",)),
    (57, f"→ {G('c')} W f(c)", ("taut",)),
    (58, f"→ {G('c')} ∼f(f(c)),c", ("taut",)),
    (59, f"→ {G('d')} W d", ("taut",)),
    (60, f"→ {G('d')} W f(d)", ("taut",)),
    (61, f"→ {G('d')} ∼f(f(d)),d", ("taut",)),
    (62, "W c", ("mp", 54, 56)),
    (63, "W d", ("mp", 55, 59)),
    (64, "W f(c)", ("mp", 54, 57)),
    (65, "W f(d)", ("mp", 55, 60)),
    (66, "∼f(f(c)),c", ("mp", 54, 58)),
    (67, "∼f(f(d)),d", ("mp", 55, 61)),
    (68, "→ W c → W y W cy", ("subst", 3, "x", "c")),
    (69, "→ W c → W d W cd", ("subst", 68, "y", "d")),
    (70, "→ W d W cd", ("mp", 62, 69)),
    (71, "W cd", ("mp", 63, 70)),
    (72, "→ W f(d) → W y W f(d)y", ("subst", 3, "x", "f(d)")),
    (73, "→ W f(d) → W f(c) W f(d)f(c)", ("subst", 72, "y", "f(c)")),
    (74, "→ W f(c) W f(d)f(c)", ("mp", 65, 73)),
    (75, "W f(d)f(c)", ("mp", 64, 74)),
    (76, "→ W c → W y ∼f(cy),f(y)f(c)", ("subst", 6, "x", "c")),
    (77, "→ W c → W d ∼f(cd),f(d)f(c)", ("subst", 76, "y", "d")),
    (78, "→ W d ∼f(cd),f(d)f(c)", ("mp", 62, 77)),
    (79, "∼f(cd),f(d)f(c)", ("mp", 63, 78)),
    (80, "→ ∼f(cd),t ∼t,f(cd)", ("subst", 30, "s", "f(cd)")),
    (81, "→ ∼f(cd),f(d)f(c) ∼f(d)f(c),f(cd)", ("subst", 80, "t", "f(d)f(c)")),
    (82, "∼f(d)f(c),f(cd)", ("mp", 79, 81)),
    (83, "→ ∼f(d)f(c),t → W f(d)f(c) W t", ("subst", 37, "s", "f(d)f(c)")),
    (84, "→ ∼f(d)f(c),f(cd) → W f(d)f(c) W f(cd)", ("subst", 83, "t", "f(cd)")),
    (85, "→ W f(d)f(c) W f(cd)", ("mp", 82, 84)),
    (86, "W f(cd)", ("mp", 75, 85)),
    (87, "→ ∼st,st → ∼t,v ∼st,sv", ("eq",)),
    (88, "∼st,st", ("subst", 7, "x", "st")),
    (89, "→ ∼t,v ∼st,sv", ("mp", 88, 87)),
    (90, "→ ∼st,sv → ∼s,u ∼st,uv", ("eq",)),
    (91, "→ → ∼t,v ∼st,sv → → ∼st,sv → ∼s,u ∼st,uv → ∼s,u → ∼t,v ∼st,uv", ("taut",)),
    (92, "→ → ∼st,sv → ∼s,u ∼st,uv → ∼s,u → ∼t,v ∼st,uv", ("mp", 89, 91)),
    (93, "→ ∼s,u → ∼t,v ∼st,uv", ("mp", 90, 92)),
    (94, "→ W f(d) → W y ∼f(f(d)y),f(y)f(f(d))", ("subst", 6, "x", "f(d)")),
    (95, "→ W f(d) → W f(c) ∼f(f(d)f(c)),f(f(c))f(f(d))", ("subst", 94, "y", "f(c)")),
    (96, "→ W f(c) ∼f(f(d)f(c)),f(f(c))f(f(d))", ("mp", 65, 95)),
    (97, "∼f(f(d)f(c)),f(f(c))f(f(d))", ("mp", 64, 96)),
    (98, "→ ∼f(f(c)),u → ∼t,v ∼f(f(c))t,uv", ("subst", 93, "s", "f(f(c))")),
    (99, "→ ∼f(f(c)),c → ∼t,v ∼f(f(c))t,cv", ("subst", 98, "u", "c")),
    (100, "→ ∼f(f(c)),c → ∼f(f(d)),v ∼f(f(c))f(f(d)),cv", ("subst", 99, "t", "f(f(d))")),
    (101, "→ ∼f(f(c)),c → ∼f(f(d)),d ∼f(f(c))f(f(d)),cd", ("subst", 100, "v", "d")),
    (102, "→ ∼f(f(d)),d ∼f(f(c))f(f(d)),cd", ("mp", 66, 101)),
    (103, "∼f(f(c))f(f(d)),cd", ("mp", 67, 102)),
    (104, "→ ∼f(f(d)f(c)),t → ∼t,u ∼f(f(d)f(c)),u", ("subst", 14, "s", "f(f(d)f(c))")),
    (
        105,
        "→ ∼f(f(d)f(c)),f(f(c))f(f(d)) → ∼f(f(c))f(f(d)),u ∼f(f(d)f(c)),u",
        ("subst", 104, "t", "f(f(c))f(f(d))"),
    ),
    (
        106,
        "→ ∼f(f(d)f(c)),f(f(c))f(f(d)) → ∼f(f(c))f(f(d)),cd ∼f(f(d)f(c)),cd",
        ("subst", 105, "u", "cd"),
    ),
    (107, "→ ∼f(f(c))f(f(d)),cd ∼f(f(d)f(c)),cd", ("mp", 97, 106)),
    (108, "∼f(f(d)f(c)),cd", ("mp", 103, 107)),
    (109, "→ ∼f(cd),t ∼f(f(cd)),f(t)", ("subst", 10, "s", "f(cd)")),
    (110, "→ ∼f(cd),f(d)f(c) ∼f(f(cd)),f(f(d)f(c))", ("subst", 109, "t", "f(d)f(c)")),
    (111, "∼f(f(cd)),f(f(d)f(c))", ("mp", 79, 110)),
    (112, "→ ∼f(f(cd)),t → ∼t,u ∼f(f(cd)),u", ("subst", 14, "s", "f(f(cd))")),
    (
        113,
        "→ ∼f(f(cd)),f(f(d)f(c)) → ∼f(f(d)f(c)),u ∼f(f(cd)),u",
        ("subst", 112, "t", "f(f(d)f(c))"),
    ),
    (114, "→ ∼f(f(cd)),f(f(d)f(c)) → ∼f(f(d)f(c)),cd ∼f(f(cd)),cd", ("subst", 113, "u", "cd")),
    (115, "→ ∼f(f(d)f(c)),cd ∼f(f(cd)),cd", ("mp", 111, 114)),
    (116, "∼f(f(cd)),cd", ("mp", 108, 115)),
    (117, f"→ W cd → W f(cd) → ∼f(f(cd)),cd {G('cd')}", ("taut",)),
    (118, f"→ W f(cd) → ∼f(f(cd)),cd {G('cd')}", ("mp", 71, 117)),
    (119, f"→ ∼f(f(cd)),cd {G('cd')}", ("mp", 86, 118)),
    (120, G("cd"), ("mp", 116, 119)),
]


# ---------------------------------------------------------------- dual iff with two inductions

DUAL = Notation("xyuv", "D")


def example1_steps(b: ProofBuilder, F, x: str) -> int:
    """The seven steps proving → F ∃x F; returns the last step."""
    from indukt.syntax import All, Ex, Iff, Imp, Not

    nF = Not(All(x, Not(F)))
    s1 = b.quant("a", Imp(All(x, Not(F)), Not(F)))
    s2 = b.taut(Imp(b.formula(s1), Imp(F, nF)))
    s3 = b.mp(s1, s2)
    s4 = b.quant("c", Iff(nF, Ex(x, F)))
    s5 = b.taut(Imp(b.formula(s3), Imp(b.formula(s4), Imp(F, Ex(x, F)))))
    s6 = b.mp(s3, s5)
    return b.mp(s4, s6)


def exists_out(b: ProofBuilder, imp_step: int, y: str) -> int:
    """From → A B with y not free in B, derive → ∃y A B."""
    from indukt.syntax import All, Ex, Iff, Imp, Not

    a, c = b.formula(imp_step).left, b.formula(imp_step).right
    contra = b.chain([imp_step], Imp(Not(c), Not(a)))
    g = b.gen(y, contra)
    qb = b.quant("b", Imp(b.formula(g), Imp(Not(c), All(y, Not(a)))))
    s = b.mp(g, qb)
    back = b.chain([s], Imp(Not(All(y, Not(a))), c))
    qc = b.quant("c", Iff(Not(All(y, Not(a))), Ex(y, a)))
    return b.chain([back, qc], Imp(Ex(y, a), c))


def dual_iff() -> tuple[Proof, dict[str, int]]:
    nt = DUAL
    b = ProofBuilder()
    marks: dict[str, int] = {}
    ax = [b.basis(k, nt(t)) for k, t in enumerate(
        ["D 1", "→ D x D x0", "→ D x D x1", "D 1,a", "→ D x,y D x0,yy", "→ D x,y D x1,yya"], 1)]
    # first induction: p = D, i = 2, G = D u; obligations are the axioms 1-3
    s7 = b.induct(None, "D", ("?u", "?v"), nt("D u"), {4: ax[0], 5: ax[1], 6: ax[2]})
    marks["first-induct"] = s7
    assert b.formula(s7) == nt("→ D u,v D u")
    s = b.subst_all(s7, [("?u", ("?x",)), ("?v", ("?y",))])
    s12 = exists_out(b, s, "?y")
    assert b.formula(s12) == nt("→ ∃y D x,y D x")
    marks["exists-implies"] = s12

    # second implication
    s13 = example1_steps(b, nt("D x,y"), "?y")
    assert b.formula(s13) == nt("→ D x,y ∃y D x,y")
    s14 = b.subst_all(s13, [("?x", ("1",)), ("?y", ("a",))])
    assert b.formula(s14) == nt("→ D 1,a ∃y D 1,y")
    s15 = b.mp(ax[3], s14)

    def step_case(digit: str, axiom: int, tail: str) -> int:
        s16 = b.subst(s13, "?x", ("?x", digit))
        s17 = b.subst(s16, "?y", nt.lst(tail))
        s18 = b.chain([ax[axiom - 1], s17], nt(f"→ D x,y ∃y D x{digit},y"))
        return exists_out(b, s18, "?y")

    s23 = step_case("0", 5, "yy")
    assert b.formula(s23) == nt("→ ∃y D x,y ∃y D x0,y")
    s31 = step_case("1", 6, "yya")
    assert b.formula(s31) == nt("→ ∃y D x,y ∃y D x1,y")

    # rename bound variables between y and v
    def bridge(lam: tuple[str, ...], src: str, dst: str) -> int:
        """→ ∃src D λ,src ∃dst D λ,dst"""
        s = example1_steps(b, nt(f"D x,{dst}"), "?" + dst)
        if lam != ("?x",):
            s = b.subst(s, "?x", lam)
        s = b.subst(s, "?" + dst, ("?" + src,))
        return exists_out(b, s, "?" + src)

    s32 = b.mp(s15, bridge(("1",), "y", "v"))
    into = bridge(("?x",), "v", "y")
    s33 = b.chain([into, s23, bridge(("?x", "0"), "y", "v")], nt("→ ∃v D x,v ∃v D x0,v"))
    s34 = b.chain([into, s31, bridge(("?x", "1"), "y", "v")], nt("→ ∃v D x,v ∃v D x1,v"))
    assert b.formula(s32) == nt("∃v D 1,v")
    marks.update({"f32": s32, "f33": s33, "f34": s34})

    # second induction: p = D, i = 1, G = ∃v D u,v; obligations are 32-34
    s35 = b.induct(None, "D", ("?u",), nt("∃v D u,v"), {1: s32, 2: s33, 3: s34})
    marks["second-induct"] = s35
    assert b.formula(s35) == nt("→ D u ∃v D u,v")
    s36 = b.subst(s35, "?u", ("?x",))
    s_fwd = b.chain([s36, into], nt("→ D x ∃y D x,y"))
    marks["implies-exists"] = s_fwd
    iff = b.chain([s12, s_fwd], nt("↔ D x ∃y D x,y"))
    final = b.gen("?x", iff)
    assert b.formula(final) == nt("∀x ↔ D x ∃y D x,y")
    marks["final"] = final
    return b.proof(), marks


# ---------------------------------------------------------------- C-elimination sample


def q_contradiction() -> Proof:
    """Rule (e) on a predicate Q that no basis axiom defines gives ¬Q u."""
    return _q_proof(Notation("xyuz", "D Q"), "& ∀z ∼z,z ¬ ∀z ∼z,z")


def _q_proof(nt: Notation, C: str) -> Proof:
    b = ProofBuilder()
    s1 = b.induct(None, "Q", ("?u",), nt(C), {})
    s2 = b.chain([s1], nt("¬ Q u"))
    s3 = b.subst(s2, "?u", ("1", "0"))
    s4 = b.basis(2, nt("→ D x D x0"))
    s5 = b.chain([s3, s4], nt("→ D x & ¬ Q 10 D x0"))
    b.gen("?x", s5)
    return b.proof()


# ---------------------------------------------------------------- writing


def write(name: str, text: str) -> None:
    (CORPUS / name).write_text(text)
    print("wrote", name)


def main() -> int:
    systems = {n: load_system(CORPUS / f"{n}.msys") for n in ("dual", "reverse", "reverse-cd", "spa", "qsys")}
    ok = True

    def expect_proof(sysname: str, fname: str, P: Proof, header: str, accept: bool = True) -> None:
        nonlocal ok
        rep = check_proof(systems[sysname], P)
        if rep.accepted != accept:
            print(f"UNEXPECTED {fname}: {rep.summary()}", file=sys.stderr)
            ok = False
        write(fname, proof_to_text(P, header))

    for fname, sysname, D, header in [
        ("dual-101.rproof", "dual", dual_101(), "D 101,aaaaa in the dual system"),
        ("spa-2plus.rproof", "spa", spa_2plus(), "∼+(s(0)s(0)),s(s(0)) in S_PA"),
    ]:
        M = systems[sysname]
        rep = check_rderivation(M.rsys, M.lang, D)
        if not rep.accepted:
            print(f"UNEXPECTED {fname}: {rep.summary()}", file=sys.stderr)
            ok = False
        write(fname, rderivation_to_text(D, header))

    expect_proof("reverse", "ex1.mproof", example1(), "→ F ∃x F for F = → W x W f(x)")
    expect_proof("reverse", "ex2.mproof", example2(), "→ ∀x → F G → ∀x F ∀x G for F = W x, G = W f(x)")
    expect_proof(
        "reverse",
        "ex3-invalid.mproof",
        example3(),
        "Invalid: step 1 ignores the side condition x not free in the antecedent.\n"
        "Modus ponens steps list the minor premise first.",
        accept=False,
    )
    p53 = table(REV, REVERSE_1_53)
    expect_proof("reverse", "reverse-1-53.mproof", p53, "Reversal system, steps 1-53")
    p120 = table(REV, REVERSE_1_53 + REVERSE_54_120)
    expect_proof("reverse-cd", "reverse-1-120.mproof", p120, "Steps 1-120 under phi1 = G(c), phi2 = G(d)")
    piff, marks = dual_iff()
    expect_proof("dual", "dual-iff.mproof", piff, "∀x ↔ D x ∃y D x,y with two applications of Rule (e)")
    expect_proof("qsys", "q-contradiction.mproof", q_contradiction(), "¬Q u by Rule (e) with no obligations")

    manifest = {
        "systems": sorted(f"{n}.msys" for n in (*systems, "pa")),
        "entries": [
            {"id": "dual-101", "system": "dual.msys", "file": "dual-101.rproof", "kind": "rproof",
             "expect": "accept", "conclusion": "(pred D (l 1 0 1) (l a a a a a))"},
            {"id": "spa-2plus", "system": "spa.msys", "file": "spa-2plus.rproof", "kind": "rproof",
             "expect": "accept", "conclusion": "(eq (l + ( s ( 0 ) s ( 0 ) )) (l s ( s ( 0 ) )))"},
            {"id": "ex1", "system": "reverse.msys", "file": "ex1.mproof", "kind": "mproof", "expect": "accept"},
            {"id": "ex2", "system": "reverse.msys", "file": "ex2.mproof", "kind": "mproof", "expect": "accept"},
            {"id": "ex3-invalid", "system": "reverse.msys", "file": "ex3-invalid.mproof", "kind": "mproof",
             "expect": "reject", "failed_step": 1,
             "reason": "quantifier axiom (3.11)(b): x free in antecedent"},
            {"id": "reverse-1-53", "system": "reverse.msys", "file": "reverse-1-53.mproof", "kind": "mproof",
             "expect": "accept", "conclusion": print_formula(REV(G("b")))},
            {"id": "reverse-1-120", "system": "reverse-cd.msys", "file": "reverse-1-120.mproof",
             "kind": "mproof", "expect": "accept", "conclusion": print_formula(REV(G("cd")))},
            {"id": "dual-iff", "system": "dual.msys", "file": "dual-iff.mproof", "kind": "mproof",
             "expect": "accept", "conclusion": print_formula(DUAL("∀x ↔ D x ∃y D x,y")),
             "marks": marks},
            {"id": "q-contradiction", "system": "qsys.msys", "file": "q-contradiction.mproof",
             "kind": "mproof", "expect": "accept"},
            {"id": "dual-saturate", "system": "dual.msys", "kind": "saturate", "bound": 12,
             "expect": "accept", "conclusion": "(pred D (l 1 0 1) (l a a a a a))"},
            {"id": "spa-saturate", "system": "spa.msys", "kind": "saturate", "bound": 14,
             "expect": "accept", "conclusion": "(eq (l + ( s ( 0 ) s ( 0 ) )) (l s ( s ( 0 ) )))",
             "golden": "spa-2plus.rproof"},
            {"id": "pipeline-3-3", "system": "reverse.msys", "kind": "pipeline-3-3", "expect": "accept",
             "conclusion": "(imp (pred W (l ?x)) (eq (l f ( f ( ?x ) )) (l ?x)))"},
            {"id": "pa-induction", "system": "spa.msys", "kind": "induction-principle", "expect": "accept",
             "formula": "(eq (l + ( ?x 0 )) (l ?x))"},
        ],
    }
    write("manifest.json", json.dumps(manifest, indent=2, ensure_ascii=False) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
