"""Multi-stage constructions assembled from the transformers.

`reversal_pipeline` proves → W x W f(x) and → W x ∼f(f(x)),x in the
word-reversal system from the two hand proofs in the corpus.
`induction_principle` proves, for a formula H of the N0-system,

    → ∀x → N0 x & H(0) → H H(s(x))   ∀x → N0 x H

by adjoining the hypothesis, one Rule (e) step on N0, the deduction
theorem and generalization of constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .binding import free_list, fresh_var, sbf, vars_of
from .files import load_proof, load_system, save_proof
from .kernel import CheckReport, MathSystem, Proof, check_proof
from .syntax import All, And, Formula, Imp, Pred
from .transform import ProofBuilder, TransformError, deduction, generalize_constants


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass
class Stage:
    name: str
    system: MathSystem
    proof: Proof
    report: CheckReport

    @property
    def conclusion(self) -> Formula | None:
        return self.proof.conclusion


@dataclass
class PipelineResult:
    stages: list[Stage] = field(default_factory=list)
    results: dict[str, int] = field(default_factory=dict)  # label -> step in the final proof

    @property
    def final(self) -> Stage:
        return self.stages[-1]

    def formula(self, label: str) -> Formula:
        return self.final.proof.formula_at(self.results[label])

    def write(self, out: str | Path) -> list[Path]:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for i, st in enumerate(self.stages, 1):
            p = out / f"{i:02d}-{st.name}.mproof"
            save_proof(p, st.proof, f"{st.name} in {st.system.name or 'system'}")
            paths.append(p)
        return paths


def _stage(res: PipelineResult, name: str, M: MathSystem, P: Proof) -> Stage:
    rep = check_proof(M, P)
    if not rep.accepted:
        raise PipelineError(name, rep.summary())
    st = Stage(name, M, P, rep)
    res.stages.append(st)
    return st


def _run(name: str, fn, *args):
    try:
        return fn(*args)
    except (TransformError, ValueError) as e:
        raise PipelineError(name, str(e)) from e


# ---------------------------------------------------------------- word reversal


def _G(lst: tuple[str, ...]) -> Formula:
    from .syntax import Eq

    f_l = ("f", "(", *lst, ")")
    return And(And(Pred("W", (lst,)), Pred("W", (f_l,))), Eq(("f", "(", *f_l, ")"), lst))


def reversal_pipeline(corpus: str | Path, adjoin: tuple[str, ...] = ("phi1", "phi2")) -> PipelineResult:
    """Steps 1-53, then 54-120 under G(c), G(d), then the induction on W."""
    corpus = Path(corpus)
    res = PipelineResult()
    base = load_system(corpus / "reverse.msys")
    p53 = load_proof(corpus / "reverse-1-53.mproof")
    p120 = load_proof(corpus / "reverse-1-120.mproof")
    _stage(res, "reverse-1-53", base, p53)

    M = _run("extend", base.extend_alphabet, {"c", "d"})
    hyps = {"phi1": _G(("c",)), "phi2": _G(("d",))}
    for name in adjoin:
        M = _run("adjoin", M.adjoin, name, hyps[name])

    # deduction checks its input proof in M first, so a missing hypothesis surfaces here
    once = _run("deduction", deduction, M, "phi2", p120)
    _stage(res, "deduct-phi2", M.without("phi2"), once)
    twice = _run("deduction", deduction, M.without("phi2"), "phi1", once)
    Mcd = M.without("phi2").without("phi1")
    _stage(res, "deduct-phi1", Mcd, twice)

    avoid = _used_vars(twice) | base.rsys.basis_vars()
    vc = fresh_var(avoid, "?p")
    vd = fresh_var(avoid | {vc}, "?q")
    gen = _run("genconst", generalize_constants, Mcd, {"c": vc, "d": vd}, twice)
    _stage(res, "genconst", base, gen)

    b = ProofBuilder()
    w53 = b.include(p53)
    wg = b.include(gen)
    x, y, u = "?x", "?y", "?u"
    step3 = b.subst_all(wg[gen.steps[-1].number], [(vc, (x,)), (vd, (y,))])
    want = Imp(_G((x,)), Imp(_G((y,)), _G((x, y))))
    if b.formula(step3) != want:
        raise PipelineError("rule-e", "generalized formula has an unexpected shape")
    oblig = {1: w53[_find(p53, _G(("a",)))], 2: w53[_find(p53, _G(("b",)))], 3: step3}
    ind = _run("rule-e", b.induct, base.rsys, "W", (u,), _G((u,)), oblig)
    at_x = b.subst(ind, u, (x,))
    wx = Pred("W", ((x,),))
    left = b.chain([at_x], Imp(wx, Pred("W", (("f", "(", x, ")"),))))
    right = b.chain([at_x], Imp(wx, _G((x,)).right))
    _stage(res, "rule-e", base, b.proof())
    res.results = {"G(x)G(y)": step3, "W u G(u)": ind, "W f(x)": left, "ff(x)=x": right}
    return res


def _find(P: Proof, f: Formula) -> int:
    for s in P.steps:
        if s.formula == f:
            return s.number
    raise PipelineError("rule-e", "obligation not proved in steps 1-53")


def _used_vars(P: Proof) -> set[str]:
    from .transform import _proof_vars

    return _proof_vars(P)


# ---------------------------------------------------------------- induction principle


def induction_target(H: Formula, x: str = "?x", pred: str = "N0") -> Formula:
    """→ ∀x → N x & H(0) → H H(s(x))   ∀x → N x H"""
    nx = Pred(pred, ((x,),))
    step = Imp(nx, And(sbf(H, ("0",), x), Imp(H, sbf(H, ("s", "(", x, ")"), x))))
    return Imp(All(x, step), All(x, Imp(nx, H)))


def induction_principle(M: MathSystem, H: Formula, x: str = "?x", pred: str = "N0") -> PipelineResult:
    if not M.is_plain():
        raise PipelineError("setup", "the system already has adjoined statements")
    if x not in free_list(H):
        raise PipelineError("setup", f"{x} is not free in H")
    res = PipelineResult()
    others = [v for v in free_list(H) if v != x]
    used = set(vars_of(H)) | set(M.rsys.basis_vars()) | {x}
    consts: dict[str, str] = {}
    for v in others:
        consts[v] = _fresh_const(M, set(consts.values()))
    Ht = H
    for v, c in consts.items():
        Ht = sbf(Ht, (c,), v)
    MA = _run("extend", M.extend_alphabet, set(consts.values())) if consts else M

    phi_x = induction_target(Ht, x, pred).left
    MA_phi = _run("adjoin", MA.adjoin, "phi", phi_x)
    phi_w = MA_phi.adjoined_map["phi"]
    assert isinstance(phi_w, All)
    w = phi_w.var
    u = fresh_var(used | {w}, "?u")

    def N(lst):
        return Pred(pred, (tuple(lst),))

    sx = ("s", "(", x, ")")
    H0, Hs = sbf(Ht, ("0",), x), sbf(Ht, sx, x)

    b = ProofBuilder()
    a = b.adjoined("phi", phi_w)
    body_w = b.mp(a, b.quant("a", Imp(phi_w, phi_w.body)))
    body = b.subst(body_w, w, (x,))
    o1a = b.chain([body], Imp(N((x,)), H0))
    o1b = b.subst(o1a, x, ("0",))
    n0 = b.basis(1, N(("0",)))
    ob1 = b.chain([n0, o1b], And(N(("0",)), H0))
    n_s = b.basis(2, Imp(N((x,)), N(sx)))
    ob2 = b.chain([body, n_s], Imp(And(N((x,)), Ht), And(N(sx), Hs)))
    G = And(N((u,)), sbf(Ht, (u,), x))
    ind = _run("rule-e", b.induct, MA.rsys, pred, (u,), G, {1: ob1, 2: ob2})
    back = b.subst(ind, u, (x,))
    nh = b.chain([back], Imp(N((x,)), Ht))
    b.gen(x, nh)
    _stage(res, "induction", MA_phi, b.proof())

    ded = _run("deduction", deduction, MA_phi, "phi", res.final.proof)
    _stage(res, "deduction", MA, ded)

    # → φ_x φ_w renames the bound variable back
    b = ProofBuilder()
    where = b.include(ded)
    last = where[ded.steps[-1].number]
    qa = b.quant("a", Imp(phi_x, phi_x.body))
    qw = b.subst(qa, x, (w,))
    g = b.gen(w, qw)
    qb = b.quant("b", Imp(b.formula(g), Imp(phi_x, phi_w)))
    bridge = b.mp(g, qb)
    target = Imp(phi_x, b.formula(last).right)
    b.chain([bridge, last], target)
    _stage(res, "bound-rename", MA, b.proof())

    if consts:
        avoid = _used_vars(res.final.proof) | M.rsys.basis_vars()
        fresh: dict[str, str] = {}
        for c in consts.values():
            fresh[c] = fresh_var(avoid | set(fresh.values()), "?k")
        gen = _run("genconst", generalize_constants, MA, fresh, res.final.proof)
        b = ProofBuilder()
        where = b.include(gen)
        s = where[gen.steps[-1].number]
        s = b.subst_all(s, [(fresh[consts[v]], (v,)) for v in others])
        _stage(res, "genconst", M, b.proof())

    if res.final.conclusion != induction_target(H, x, pred):
        raise PipelineError("final", "conclusion differs from the induction principle")
    return res


def _fresh_const(M: MathSystem, taken: set[str]) -> str:
    n = 1
    while f"c{n}" in M.alphabet or f"c{n}" in taken:
        n += 1
    return f"c{n}"
