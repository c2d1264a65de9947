"""Reading and writing system, proof and derivation files."""

from __future__ import annotations

from pathlib import Path

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
    adjoin,
    extend_alphabet,
)
from .langset import NONTERMINAL, VAR, LGrammar, has_ground_member, validate_closure
from .rsys import RAxiom, RDerivation, RecursiveSystem, RMP, RStep, RSubst
from .sexpr import ParseError, SExpr, flatten, read_all
from .syntax import (
    PARENS,
    VARIABLES,
    formula_from_sexpr,
    is_var,
    list_from_sexpr,
    pred_pairs,
    print_formula,
    print_list,
    print_rform,
    rform_from_sexpr,
    rform_to_formula,
)

SYSTEM_SECTIONS = (
    "system",
    "vars",
    "alphabet",
    "predicates",
    "rbasis",
    "basis",
    "lang",
    "hooks",
    "constants",
    "adjoin",
)


def _atoms(items: list[SExpr], what: str) -> list[str]:
    if not all(isinstance(x, str) for x in items):
        raise ParseError(f"{what} takes plain tokens")
    return list(items)  # type: ignore[arg-type]


def _sections(exprs: list[SExpr], allowed: tuple[str, ...]) -> dict[str, list[SExpr]]:
    out: dict[str, list[SExpr]] = {}
    for e in exprs:
        if not (isinstance(e, list) and e and isinstance(e[0], str)):
            raise ParseError("expected a (section ...) form")
        head = e[0]
        if head not in allowed:
            raise ParseError(f"unknown section {head!r}")
        if head in out:
            raise ParseError(f"section {head!r} appears twice")
        out[head] = e[1:]
    return out


def parse_system(text: str, name: str = "") -> MathSystem:
    sec = _sections(read_all(text), SYSTEM_SECTIONS)
    for v in _atoms(sec.get("vars", []), "vars"):
        VARIABLES.declare(v)
    if "system" in sec:
        name = " ".join(_atoms(sec["system"], "system"))
    alphabet = frozenset(_atoms(sec.get("alphabet", []), "alphabet"))
    for sym in alphabet:
        if is_var(sym) or sym in PARENS or sym in (NONTERMINAL, VAR):
            raise ParseError(f"bad alphabet symbol {sym!r}")
    preds: set[tuple[str, int]] = set()
    for p in sec.get("predicates", []):
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
            raise ParseError("predicates are written (NAME ARITY)")
        try:
            preds.add((p[0], int(p[1])))
        except ValueError as e:
            raise ParseError(f"bad arity {p[1]!r}") from e
    rbasis = tuple(rform_from_sexpr(e, alphabet) for e in sec.get("rbasis", []))
    for r in rbasis:
        undeclared = pred_pairs(rform_to_formula(r)) - preds
        if undeclared:
            raise ParseError(f"undeclared predicate(s) {sorted(undeclared)} in rbasis")
    if "basis" in sec:
        # a separate basis: the recursive system keeps only what its axioms use
        r_alpha = frozenset(
            t
            for r in rbasis
            for t in _formula_tokens(rform_to_formula(r))
            if not is_var(t) and t not in PARENS
        )
        r_preds = frozenset(pp for r in rbasis for pp in pred_pairs(rform_to_formula(r)))
        S = RecursiveSystem(r_alpha, r_preds, rbasis)
    else:
        S = RecursiveSystem(alphabet, frozenset(preds), rbasis)
    if "basis" in sec:
        basis = tuple(formula_from_sexpr(e, alphabet) for e in sec["basis"])
    else:
        basis = tuple(rform_to_formula(r) for r in rbasis)
    for f in basis:
        undeclared = pred_pairs(f) - preds
        if undeclared:
            raise ParseError(f"undeclared predicate(s) {sorted(undeclared)} in basis")
    alts = []
    for alt in sec.get("lang", []):
        if not (isinstance(alt, list) and alt and alt[0] == "alt"):
            raise ParseError("lang alternatives are written (alt tok ...)")
        alts.append(tuple(flatten(alt[1:])))
    if not alts:
        raise ParseError("missing lang section")
    try:
        L = LGrammar(tuple(alts), alphabet)
    except ValueError as e:
        raise ParseError(str(e)) from e
    closure = validate_closure(L)
    if not closure.ok:
        raise ParseError("lang is not closed under substitution: " + "; ".join(closure.violations))
    hooks = frozenset(_atoms(sec.get("hooks", []), "hooks"))
    try:
        M = MathSystem(S, alphabet, frozenset(preds), basis, L, hooks=hooks, name=name)
    except ValueError as e:
        raise ParseError(str(e)) from e
    consts = _atoms(sec.get("constants", []), "constants")
    if consts:
        M = extend_alphabet(M, frozenset(consts))
    for item in sec.get("adjoin", []):
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], str)):
            raise ParseError("adjoined statements are written (NAME FORMULA)")
        M = adjoin(M, item[0], formula_from_sexpr(item[1], M.alphabet))
    return M


def _formula_tokens(f):
    from .syntax import lists_of

    for lst in lists_of(f):
        yield from lst


def load_system(path: str | Path) -> MathSystem:
    p = Path(path)
    try:
        return parse_system(p.read_text(), p.stem)
    except ParseError as e:
        raise ParseError(f"{p.name}: {e}") from e


def ground_lists_available(M: MathSystem) -> bool:
    return has_ground_member(M.lang)


# ---------------------------------------------------------------- proofs


def _int(x: SExpr, what: str) -> int:
    if not isinstance(x, str):
        raise ParseError(f"{what} must be a number")
    try:
        return int(x)
    except ValueError as e:
        raise ParseError(f"{what} must be a number, got {x!r}") from e


def _var(x: SExpr) -> str:
    if not (isinstance(x, str) and is_var(x)):
        raise ParseError(f"expected a variable, got {x!r}")
    VARIABLES.index(x)
    return x


def just_from_sexpr(e: SExpr) -> Justification:
    if not (isinstance(e, list) and e and isinstance(e[0], str)):
        raise ParseError("expected a justification")
    head, rest = e[0], e[1:]
    match head, len(rest):
        case "ax-taut", 0:
            return AxTaut()
        case "ax-eq", 0:
            return AxEq()
        case "ax-quant", 1 if rest[0] in ("a", "b", "c"):
            return AxQuant(rest[0])  # type: ignore[arg-type]
        case "ax-basis", 1:
            return AxBasis(_int(rest[0], "basis index"))
        case "ax-adjoined", 1 if isinstance(rest[0], str):
            return AxAdjoined(rest[0])
        case "ax-schema", 1 if isinstance(rest[0], str):
            return AxSchema(rest[0])
        case "mp", 2:
            return MP(_int(rest[0], "step"), _int(rest[1], "step"))
        case "subst", 3:
            return Subst(_int(rest[0], "step"), _var(rest[1]), list_from_sexpr(rest[2]))
        case "gen", 2:
            return Gen(_var(rest[0]), _int(rest[1], "step"))
        case "induct", 5:
            pred, arity, xs, g, ob = rest
            if not isinstance(pred, str) or not isinstance(xs, list):
                raise ParseError("induct takes PRED ARITY (?x ...) FORMULA (oblig ...)")
            if not (isinstance(ob, list) and ob and ob[0] == "oblig"):
                raise ParseError("induct needs an (oblig ...) map")
            pairs = []
            for pr in ob[1:]:
                if not (isinstance(pr, list) and len(pr) == 2):
                    raise ParseError("oblig entries are (AXIOM STEP)")
                pairs.append((_int(pr[0], "axiom index"), _int(pr[1], "step")))
            return Induct(
                pred,
                _int(arity, "arity"),
                tuple(_var(x) for x in xs),
                formula_from_sexpr(g),
                tuple(pairs),
            )
    raise ParseError(f"bad justification ({head} ...)")


def just_to_text(j: Justification) -> str:
    match j:
        case AxTaut():
            return "(ax-taut)"
        case AxEq():
            return "(ax-eq)"
        case AxQuant(k):
            return f"(ax-quant {k})"
        case AxBasis(k):
            return f"(ax-basis {k})"
        case AxAdjoined(n):
            return f"(ax-adjoined {n})"
        case AxSchema(h):
            return f"(ax-schema {h})"
        case MP(i, k):
            return f"(mp {i} {k})"
        case Subst(i, x, lam):
            return f"(subst {i} {x} {print_list(lam)})"
        case Gen(x, i):
            return f"(gen {x} {i})"
        case Induct(p, n, xs, g, ob):
            obl = "".join(f" ({a} {s})" for a, s in ob)
            return f"(induct {p} {n} ({' '.join(xs)}) {print_formula(g)} (oblig{obl}))"
    raise TypeError(j)


def parse_proof(text: str) -> Proof:
    exprs = read_all(text)
    if len(exprs) != 1 or not (isinstance(exprs[0], list) and exprs[0] and exprs[0][0] == "proof"):
        raise ParseError("a proof file holds one (proof ...) form")
    steps = []
    for e in exprs[0][1:]:
        if not (isinstance(e, list) and len(e) == 4 and e[0] == "step"):
            raise ParseError("steps are written (step N FORMULA JUSTIFICATION)")
        steps.append(Step(_int(e[1], "step number"), formula_from_sexpr(e[2]), just_from_sexpr(e[3])))
    return Proof(tuple(steps))


def proof_to_text(P: Proof, header: str = "") -> str:
    lines = [f"; {ln}" for ln in header.splitlines()] if header else []
    lines.append("(proof")
    for s in P.steps:
        lines.append(f"  (step {s.number} {print_formula(s.formula)}")
        lines.append(f"    {just_to_text(s.just)})")
    lines[-1] += ")"
    if not P.steps:
        lines[-1] = "(proof)"
    return "\n".join(lines) + "\n"


def header_of(text: str) -> str:
    """The leading `;` comment block of a file."""
    out = []
    for ln in text.splitlines():
        if not ln.startswith(";"):
            break
        out.append(ln[1:].removeprefix(" "))
    return "\n".join(out)


def load_proof(path: str | Path) -> Proof:
    p = Path(path)
    try:
        return parse_proof(p.read_text())
    except ParseError as e:
        raise ParseError(f"{p.name}: {e}") from e


def save_proof(path: str | Path, P: Proof, header: str = "") -> None:
    Path(path).write_text(proof_to_text(P, header))


# ---------------------------------------------------------------- R-derivations


def rjust_from_sexpr(e: SExpr):
    if not (isinstance(e, list) and e and isinstance(e[0], str)):
        raise ParseError("expected an R-justification")
    head, rest = e[0], e[1:]
    match head, len(rest):
        case "axiom", 1 if rest[0] == "eq":
            return RAxiom("eq")
        case "axiom", 1:
            return RAxiom("basis", _int(rest[0], "axiom index"))
        case "mp", 2:
            return RMP(_int(rest[0], "step"), _int(rest[1], "step"))
        case "subst", 3:
            return RSubst(_int(rest[0], "step"), _var(rest[1]), list_from_sexpr(rest[2]))
    raise ParseError(f"bad R-justification ({head} ...)")


def rjust_to_text(j) -> str:
    match j:
        case RAxiom("eq"):
            return "(axiom eq)"
        case RAxiom(_, k):
            return f"(axiom {k})"
        case RMP(i, k):
            return f"(mp {i} {k})"
        case RSubst(i, x, lam):
            return f"(subst {i} {x} {print_list(lam)})"
    raise TypeError(j)


def parse_rderivation(text: str) -> RDerivation:
    exprs = read_all(text)
    if len(exprs) != 1 or not (isinstance(exprs[0], list) and exprs[0] and exprs[0][0] == "rderivation"):
        raise ParseError("a derivation file holds one (rderivation ...) form")
    steps = []
    for e in exprs[0][1:]:
        if not (isinstance(e, list) and len(e) == 4 and e[0] == "step"):
            raise ParseError("steps are written (step N RFORMULA JUSTIFICATION)")
        steps.append(RStep(_int(e[1], "step number"), rform_from_sexpr(e[2]), rjust_from_sexpr(e[3])))
    return RDerivation(tuple(steps))


def rderivation_to_text(D: RDerivation, header: str = "") -> str:
    lines = [f"; {ln}" for ln in header.splitlines()] if header else []
    lines.append("(rderivation")
    for s in D.steps:
        lines.append(f"  (step {s.number} {print_formula(rform_to_formula(s.rform))} {rjust_to_text(s.just)})")
    lines[-1] += ")"
    if not D.steps:
        lines[-1] = "(rderivation)"
    return "\n".join(lines) + "\n"


def load_rderivation(path: str | Path) -> RDerivation:
    p = Path(path)
    try:
        return parse_rderivation(p.read_text())
    except ParseError as e:
        raise ParseError(f"{p.name}: {e}") from e


def is_proof_text(text: str) -> bool:
    exprs = read_all(text)
    return bool(exprs) and isinstance(exprs[0], list) and exprs[0][:1] == ["proof"]


__all__ = [
    "load_proof",
    "load_rderivation",
    "load_system",
    "parse_proof",
    "parse_rderivation",
    "parse_system",
    "print_rform",
    "proof_to_text",
    "rderivation_to_text",
    "save_proof",
]
