"""Command line interface.  Exit codes: 0 accept, 1 reject, 2 usage or I/O error."""

from __future__ import annotations

import argparse
import sys

from .corpus_run import corpus_dir, resolve, run_all
from .files import header_of, is_proof_text, load_proof, load_rderivation, load_system, proof_to_text, save_proof
from .kernel import ATOM_CAP, check_proof
from .langset import enumerate_ground
from .rsys import DEFAULT_BUDGET, check_rderivation, r_derivable, saturate
from .semantics import EvalBounds, eval_gen, eval_statement
from .sexpr import ParseError
from .syntax import parse_formula, print_formula, print_list

ACCEPT, REJECT, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _system(name: str):
    return load_system(resolve(name))


def _emit(P, out: str | None, header: str) -> None:
    if out:
        save_proof(out, P, header)
    else:
        sys.stdout.write(proof_to_text(P, header))


def cmd_check(a) -> int:
    M = _system(a.system)
    path = resolve(a.proof)
    if not is_proof_text(path.read_text()):
        return cmd_rcheck(a)
    rep = check_proof(M, load_proof(path), a.atom_cap)
    print(rep.summary())
    return ACCEPT if rep.accepted else REJECT


def cmd_rcheck(a) -> int:
    M = _system(a.system)
    rep = check_rderivation(M.rsys, M.lang, load_rderivation(resolve(a.proof)))
    print(rep.summary())
    return ACCEPT if rep.accepted else REJECT


def cmd_saturate(a) -> int:
    M = _system(a.system)
    fs = saturate(M.rsys, M.lang, a.bound, a.budget)
    for line in fs.lines():
        print(line)
    status = "partial" if fs.partial else "complete"
    print(f"# {status}: " + " ".join(f"{k}={v}" for k, v in sorted(fs.stats.items())), file=sys.stderr)
    return ACCEPT


def cmd_derivable(a) -> int:
    M = _system(a.system)
    v = r_derivable(M.rsys, M.lang, parse_formula(a.formula), a.bound, a.budget)
    print(v)
    return ACCEPT


def cmd_enumerate(a) -> int:
    M = _system(a.system)
    for lst in enumerate_ground(M.lang, a.max_len):
        print(print_list(lst))
    return ACCEPT


def cmd_eval(a) -> int:
    M = _system(a.system)
    B = EvalBounds(list_size=a.list_size, depth_budget=a.budget, fact_size=a.fact_size, instances=a.instances)
    f = parse_formula(a.formula)
    v = eval_gen(M, f, B) if a.gen else eval_statement(M, f, B)
    print(v)
    return ACCEPT


def cmd_theta(a) -> int:
    from .transform import theta_proof, theta_steps

    *sysname, proof = a.files
    if len(sysname) > 1:
        raise UsageError("theta takes [SYSTEM] PROOF")
    path = resolve(proof)
    P = load_proof(path)
    if sysname:
        T = theta_proof(_system(sysname[0]), P)
    else:
        T = theta_steps(P)  # no system: mapped stepwise, not re-checked
    _emit(T, a.out, header_of(path.read_text()) if T == P else f"Θ image of {path.name}")
    return ACCEPT


def cmd_celim(a) -> int:
    from .transform import c_eliminate

    M = _system(a.system)
    P = c_eliminate(M, a.pred, a.arity, load_proof(resolve(a.proof)))
    _emit(P, a.out, f"{a.pred} ({a.arity}-ary) replaced by the contradiction C")
    return ACCEPT


def cmd_deduce(a) -> int:
    from .transform import deduction

    M = _system(a.system)
    P = deduction(M, a.name, load_proof(resolve(a.proof)))
    _emit(P, a.out, f"deduction theorem discharging {a.name}")
    return ACCEPT


def cmd_genconst(a) -> int:
    from .transform import generalize_constants

    M = _system(a.system)
    mapping = {}
    for item in a.map:
        c, _, v = item.partition("=")
        if not v:
            raise UsageError(f"--map expects CONST=?VAR, got {item!r}")
        mapping[c] = v
    P = generalize_constants(M, mapping, load_proof(resolve(a.proof)))
    _emit(P, a.out, "constants generalized: " + " ".join(f"{c}={v}" for c, v in mapping.items()))
    return ACCEPT


def cmd_relativize(a) -> int:
    from .transform import relativize

    print(print_formula(relativize(parse_formula(a.formula), a.pred)))
    return ACCEPT


def cmd_pipeline(a) -> int:
    from .pipelines import PipelineError, reversal_pipeline

    adjoin = tuple(n for n in ("phi1", "phi2") if n not in a.omit)
    try:
        res = reversal_pipeline(corpus_dir(), adjoin)
    except PipelineError as e:
        print(f"stage {e.stage} failed: {e}")
        return REJECT
    for st in res.stages:
        print(f"{st.name}: {st.report.summary()}")
    for label, n in res.results.items():
        f = res.final.proof.formula_at(n)
        print(f"step {n} ({label}): {print_formula(f)}")
    if a.out:
        for p in res.write(a.out):
            print(f"wrote {p}", file=sys.stderr)
    return ACCEPT


def cmd_induction(a) -> int:
    from .pipelines import PipelineError, induction_principle

    M = _system(a.system)
    try:
        res = induction_principle(M, parse_formula(a.formula), a.var, a.pred)
    except PipelineError as e:
        print(f"stage {e.stage} failed: {e}")
        return REJECT
    for st in res.stages:
        print(f"{st.name}: {st.report.summary()}")
    print(print_formula(res.final.conclusion))
    if a.out:
        res.write(a.out)
    return ACCEPT


def cmd_corpus(a) -> int:
    results = run_all(jobs=a.jobs)
    for r in results:
        print(r.line() if not a.timings else f"{r.line()}  {r.seconds:.3f}s")
    if a.report:
        from .report import write_report

        tsv, png = write_report(results, a.report)
        print(f"wrote {tsv} and {png}", file=sys.stderr)
    return ACCEPT if all(r.ok for r in results) else REJECT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="indukt", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, help):
        q = sub.add_parser(name, help=help)
        q.set_defaults(fn=fn)
        return q

    q = add("check", cmd_check, "check a proof (.mproof) or R-derivation (.rproof)")
    q.add_argument("system")
    q.add_argument("proof")
    q.add_argument("--atom-cap", type=int, default=ATOM_CAP)

    q = add("rcheck", cmd_rcheck, "check an R-derivation")
    q.add_argument("system")
    q.add_argument("proof")

    q = add("saturate", cmd_saturate, "print all facts derivable within a size bound")
    q.add_argument("system")
    q.add_argument("--bound", type=int, required=True)
    q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    q = add("derivable", cmd_derivable, "decide R-derivability of a ground prime formula")
    q.add_argument("system")
    q.add_argument("formula")
    q.add_argument("--bound", type=int, default=12)
    q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    q = add("enumerate-lists", cmd_enumerate, "list the ground members of L")
    q.add_argument("system")
    q.add_argument("--max-len", type=int, default=4)

    q = add("eval", cmd_eval, "three-valued bounded evaluation of a statement")
    q.add_argument("system")
    q.add_argument("formula")
    q.add_argument("--list-size", type=int, default=6)
    q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    q.add_argument("--fact-size", type=int, default=12)
    q.add_argument("--instances", type=int, default=2_000_000)
    q.add_argument("--gen", action="store_true", help="evaluate the universal closure")

    q = add("theta", cmd_theta, "Θ-image of a proof")
    q.add_argument("files", nargs="+", metavar="[SYSTEM] PROOF")
    q.add_argument("-o", "--out")

    q = add("celim", cmd_celim, "replace a predicate absent from the basis by C")
    q.add_argument("system")
    q.add_argument("proof")
    q.add_argument("--pred", required=True)
    q.add_argument("--arity", type=int, required=True)
    q.add_argument("-o", "--out")

    q = add("deduce", cmd_deduce, "discharge an adjoined statement")
    q.add_argument("system")
    q.add_argument("proof")
    q.add_argument("--name", required=True)
    q.add_argument("-o", "--out")

    q = add("genconst", cmd_genconst, "replace constants by fresh variables")
    q.add_argument("system")
    q.add_argument("proof")
    q.add_argument("--map", action="append", default=[], metavar="CONST=?VAR")
    q.add_argument("-o", "--out")

    q = add("relativize", cmd_relativize, "N0-premises and relativized quantifiers")
    q.add_argument("formula")
    q.add_argument("--pred", default="N0")

    q = add("pipeline-3-3", cmd_pipeline, "the word-reversal induction from steps 1-120")
    q.add_argument("--out", help="directory for the intermediate proofs")
    q.add_argument("--omit", action="append", default=[], choices=["phi1", "phi2"])

    q = add("pipeline-induction", cmd_induction, "the N0 induction principle for a formula H")
    q.add_argument("system")
    q.add_argument("formula")
    q.add_argument("--var", default="?x")
    q.add_argument("--pred", default="N0")
    q.add_argument("--out")

    q = add("corpus", cmd_corpus, "run the bundled corpus")
    q.add_argument("action", choices=["run"])
    q.add_argument("--report", help="directory for corpus.tsv and corpus.png")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--timings", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else ACCEPT
    try:
        return a.fn(a)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE
    except (OSError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return REJECT


if __name__ == "__main__":
    sys.exit(main())
