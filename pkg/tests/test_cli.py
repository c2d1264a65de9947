import subprocess
import sys

from indukt.cli import ACCEPT, REJECT, USAGE, main
from indukt.corpus_run import resolve
from indukt.files import load_proof
from indukt.syntax import Imp, print_formula

STAR = "(all ?x (imp (pred N0 (l ?x)) (not (eq (l s ( ?x )) (l 0)))))"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_verdicts(capsys):
    code, out, _ = run(capsys, "check", "dual.msys", "dual-101.rproof")
    assert code == ACCEPT and "accepted" in out
    code, out, _ = run(capsys, "check", "reverse.msys", "ex3-invalid.mproof")
    assert code == REJECT
    assert "step 1" in out and "(3.11)(b)" in out
    code, _, _ = run(capsys, "check", "reverse.msys", "reverse-1-53.mproof")
    assert code == ACCEPT


def test_usage_and_io_errors(capsys, tmp_path):
    assert run(capsys, "check", "dual.msys")[0] == USAGE
    assert run(capsys, "frobnicate")[0] == USAGE
    assert run(capsys, "check", "dual.msys", str(tmp_path / "missing.mproof"))[0] == USAGE
    bad = tmp_path / "bad.mproof"
    bad.write_text("(proof (step 1")
    assert run(capsys, "check", "dual.msys", str(bad))[0] == USAGE


def test_saturate(capsys):
    code, out, err = run(capsys, "saturate", "dual.msys", "--bound", "12")
    assert code == ACCEPT
    lines = out.splitlines()
    assert "(pred D (l 1 0 1) (l a a a a a))" in lines
    assert lines == sorted(lines)
    assert "complete" in err
    assert run(capsys, "saturate", "dual.msys", "--bound", "12")[1] == out


def test_derivable_and_eval(capsys):
    assert run(capsys, "derivable", "dual.msys", "(pred D (l 1 0 1) (l a a a a a))")[1].strip() == "True"
    assert run(capsys, "derivable", "spa.msys", "(eq (l s ( 0 )) (l 0))")[1].strip() == "False"
    code, out, _ = run(capsys, "eval", "spa.msys", STAR, "--list-size", "6")
    assert code == ACCEPT and out.strip() == "True"
    assert run(capsys, "eval", "dual.msys", "(pred D (l ?x))", "--gen", "--list-size", "3")[1].strip() == "False"
    assert run(capsys, "eval", "dual.msys", "(pred D (l ?x))")[0] == REJECT  # not a statement


def test_enumerate_lists(capsys):
    code, out, _ = run(capsys, "enumerate-lists", "dual.msys", "--max-len", "1")
    assert out.splitlines() == ["(l 0)", "(l 1)", "(l a)"]


def test_theta_fragment_input_is_unchanged(capsys, corpus, tmp_path):
    out = tmp_path / "ex2.mproof"
    assert run(capsys, "theta", "reverse.msys", "ex2.mproof", "-o", str(out))[0] == ACCEPT
    assert out.read_bytes() == (corpus / "ex2.mproof").read_bytes()
    code, text, _ = run(capsys, "theta", "ex1.mproof")
    assert code == ACCEPT and "(ex " not in text and "(iff " not in text


def test_transform_verbs(capsys, tmp_path):
    out = tmp_path / "q.mproof"
    assert run(capsys, "celim", "qsys.msys", "q-contradiction.mproof", "--pred", "Q", "--arity", "1", "-o", str(out))[0] == ACCEPT
    assert run(capsys, "check", "qsys.msys", str(out))[0] == ACCEPT
    assert "pred Q" not in out.read_text()
    assert run(capsys, "celim", "dual.msys", "dual-iff.mproof", "--pred", "D", "--arity", "1")[0] == REJECT
    code, text, _ = run(capsys, "relativize", "(all ?x (eq (l + ( 0 ?x )) (l ?x)))")
    assert text.strip() == "(all ?x (imp (pred N0 (l ?x)) (eq (l + ( 0 ?x )) (l ?x))))"
    assert run(capsys, "genconst", "reverse.msys", "ex1.mproof", "--map", "c")[0] == USAGE


def test_deduce_and_genconst(capsys, tmp_path):
    out = tmp_path / "ded.mproof"
    code, _, err = run(capsys, "deduce", "reverse-cd.msys", "reverse-1-120.mproof", "--name", "phi2", "-o", str(out))
    assert code == ACCEPT, err
    P = load_proof(out)
    assert isinstance(P.conclusion, Imp)
    assert print_formula(P.conclusion.left).count("(l d)") == 2
    assert run(capsys, "deduce", "reverse.msys", "ex1.mproof", "--name", "phi2")[0] == REJECT
    same = tmp_path / "same.mproof"
    assert run(capsys, "genconst", "reverse.msys", "ex1.mproof", "--map", "c=?k", "-o", str(same))[0] == ACCEPT
    assert load_proof(same) == load_proof(resolve("ex1.mproof"))


def test_pipeline_verbs(capsys, tmp_path):
    code, out, _ = run(capsys, "pipeline-3-3", "--out", str(tmp_path / "p"))
    assert code == ACCEPT
    assert "(imp (pred W (l ?x)) (eq (l f ( f ( ?x ) )) (l ?x)))" in out
    assert len(list((tmp_path / "p").glob("*.mproof"))) == 5
    code, out, _ = run(capsys, "pipeline-3-3", "--omit", "phi2")
    assert code == REJECT and "deduction" in out
    code, out, _ = run(capsys, "pipeline-induction", "spa.msys", "(eq (l + ( ?x 0 )) (l ?x))")
    assert code == ACCEPT


def test_corpus_run_report(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "run", "--report", str(tmp_path), "--jobs", "2")
    assert code == ACCEPT
    assert all(line.startswith("PASS") for line in out.splitlines())
    tsv = (tmp_path / "corpus.tsv").read_text().splitlines()
    assert tsv[0].split("\t") == ["id", "kind", "ok", "verdict", "steps", "seconds", "detail"]
    assert len(tsv) == len(out.splitlines()) + 1
    assert (tmp_path / "corpus.png").read_bytes()[:4] == b"\x89PNG"


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "indukt.cli", "check", "dual.msys", "dual-101.rproof"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
