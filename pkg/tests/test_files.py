import json

import pytest

from indukt.corpus_run import load_manifest
from indukt.files import (
    header_of,
    is_proof_text,
    parse_proof,
    parse_rderivation,
    parse_system,
    proof_to_text,
    rderivation_to_text,
)
from indukt.kernel import Proof
from indukt.notation import NotationError, read_list
from indukt.rsys import RDerivation
from indukt.sexpr import ParseError
from indukt.syntax import All, Eq, Ex, Iff, Imp, Not, Pred

DUAL_LANG = "(lang (alt VAR) (alt 0) (alt 1) (alt a) (alt S S))"


def test_system_files(systems):
    assert systems["dual"].predicates == {("D", 1), ("D", 2)}
    assert len(systems["dual"].rsys.basis) == 6
    assert len(systems["reverse"].rsys.basis) == 6
    assert systems["pa"].hooks == {"pa-is"}
    assert len(systems["pa"].basis) == 6
    assert systems["spa"].is_plain() and systems["dual"].is_plain()
    assert {"c", "d"} <= systems["reverse-cd"].alphabet
    assert systems["reverse-cd"].rsys == systems["reverse"].rsys


@pytest.mark.parametrize(
    "text,needle",
    [
        ("(alphabet a)\n(lang (alt VAR) (alt a)\n", "line"),
        ("(alphabet a) (lang (alt VAR) (alt b))", "undeclared symbol"),
        ("(alphabet a f) (lang (alt f ( VAR )) (alt a))", "closed under substitution"),
        ("(alphabet a) (predicates (D 1)) (rbasis (pred E (l a))) " + DUAL_LANG, "undeclared predicate"),
        ("(alphabet a)", "missing lang"),
        ("(alphabet a) (frob) (lang (alt VAR))", "unknown section"),
        ("(alphabet a) (hooks nope) (lang (alt VAR) (alt a))", "hook"),
    ],
)
def test_system_diagnostics(text, needle):
    with pytest.raises(ParseError, match=needle):
        parse_system(text)


def test_parse_error_names_the_line():
    with pytest.raises(ParseError) as e:
        parse_system("(alphabet a)\n\n(lang (alt VAR) (alt a)))")
    assert e.value.line == 3


def test_proof_files_round_trip(corpus):
    for path in sorted(corpus.glob("*.mproof")):
        text = path.read_text()
        assert is_proof_text(text)
        P = parse_proof(text)
        assert proof_to_text(P, header_of(text)) == text, path.name


def test_rderivation_files_round_trip(corpus):
    for path in sorted(corpus.glob("*.rproof")):
        text = path.read_text()
        assert not is_proof_text(text)
        D = parse_rderivation(text)
        assert rderivation_to_text(D, header_of(text)) == text, path.name


def test_empty_files():
    assert parse_proof(proof_to_text(Proof())) == Proof()
    assert parse_rderivation(rderivation_to_text(RDerivation(()))) == RDerivation(())


def test_bad_justification():
    with pytest.raises(ParseError):
        parse_proof("(proof (step 1 (eq (l a) (l a)) (frob)))")
    with pytest.raises(ParseError):
        parse_proof("(proof (step x (eq (l a) (l a)) (ax-eq)))")


def test_manifest_covers_the_corpus(corpus):
    entries = load_manifest(corpus)
    files = {e.file for e in entries if e.file}
    on_disk = {p.name for p in corpus.iterdir() if p.suffix in (".mproof", ".rproof")}
    assert on_disk <= files
    data = json.loads((corpus / "manifest.json").read_text())
    assert set(data["systems"]) == {p.name for p in corpus.glob("*.msys")}
    kinds = {e.kind for e in entries}
    assert {"mproof", "rproof", "saturate", "pipeline-3-3", "induction-principle"} <= kinds


def test_notation(nd, nr):
    assert nd("→ D x,y D x0,yy") == Imp(
        Pred("D", (("?x",), ("?y",))), Pred("D", (("?x", "0"), ("?y", "?y")))
    )
    assert nd("∀x ↔ D x ∃y D x,y") == All(
        "?x", Iff(Pred("D", (("?x",),)), Ex("?y", Pred("D", (("?x",), ("?y",)))))
    )
    assert nr("¬W f(a)") == Not(Pred("W", (("f", "(", "a", ")"),)))
    assert nd("∼{+}(x),x") == Eq(("+", "(", "?x", ")"), ("?x",))
    assert read_list("s(0)", "x") == ("s", "(", "0", ")")
    with pytest.raises(NotationError):
        nd("→ D x")
    with pytest.raises(NotationError):
        nd("D x D y")
