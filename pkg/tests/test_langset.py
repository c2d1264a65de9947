import random
from itertools import product

import pytest

from indukt.langset import VAR, LGrammar, enumerate_ground, extend_constants, member, validate_closure
from indukt.syntax import PARENS

GRAMMARS = ["dual", "reverse", "spa"]  # pa, qsys and reverse-cd repeat these


def language(L: LGrammar, max_len: int) -> set[tuple[str, ...]]:
    """Every member up to max_len by leftmost expansion of sentential forms.

    VAR becomes ?x.  No alternative is empty, so a form longer than
    max_len can never shrink back and is dropped.
    """
    alts = [tuple("?x" if t == VAR else t for t in alt) for alt in L.alternatives]
    done, seen, todo = set(), set(), [("S",)]
    while todo:
        form = todo.pop()
        if form in seen:
            continue
        seen.add(form)
        if "S" not in form:
            done.add(form)
            continue
        i = form.index("S")
        for alt in alts:
            new = form[:i] + alt + form[i + 1 :]
            if len(new) <= max_len:
                todo.append(new)
    return done


def tokens_of(L: LGrammar) -> list[str]:
    return sorted(L.terminals()) + ["?x"]


@pytest.mark.parametrize("name,n", [("dual", 8), ("reverse", 6), ("spa", 6)])
def test_member_matches_generator_exhaustively(systems, name, n):
    L = systems[name].lang
    lang = language(L, n)
    for k in range(n + 1):
        for s in product(tokens_of(L), repeat=k):
            assert member(L, s) == (s in lang), s


@pytest.mark.parametrize("name", GRAMMARS)
def test_member_matches_generator_to_length_8(systems, name):
    L = systems[name].lang
    lang = language(L, 8)
    assert all(member(L, s) for s in lang)
    rng = random.Random(7)
    toks = tokens_of(L)
    for _ in range(20000):
        s = tuple(rng.choice(toks) for _ in range(rng.randint(0, 8)))
        assert member(L, s) == (s in lang), s


@pytest.mark.slow
@pytest.mark.parametrize("name", GRAMMARS)
def test_member_all_strings_to_length_8(systems, name):
    L = systems[name].lang
    lang = language(L, 8)
    for k in range(9):
        for s in product(tokens_of(L), repeat=k):
            assert member(L, s) == (s in lang), s


def test_member_examples(systems):
    num = systems["pa"].lang
    assert member(num, ("+", "(", "s", "(", "0", ")", "?x", ")"))
    assert not member(num, ("+", "0"))
    for name in systems:
        assert member(systems[name].lang, ("?y",))


@pytest.mark.parametrize("name", GRAMMARS)
def test_enumerate_ground_is_exact(systems, name):
    L = systems[name].lang
    got = enumerate_ground(L, 6)
    want = {s for s in language(L, 6) if "?x" not in s}
    assert set(got) == want and len(got) == len(want)
    assert got == sorted(got, key=lambda s: (len(s), s))


def test_enumerate_examples(systems):
    assert enumerate_ground(systems["dual"].lang, 1) == [("0",), ("1",), ("a",)]
    assert enumerate_ground(systems["dual"].lang, 0) == []
    assert ("s", "(", "0", ")") in enumerate_ground(systems["pa"].lang, 4)


def test_extend_constants(systems):
    L = systems["reverse"].lang
    Lcd = extend_constants(L, {"c", "d"})
    assert member(Lcd, ("c", "d"))
    assert member(Lcd, ("f", "(", "c", ")"))
    assert not member(L, ("c",))
    assert extend_constants(L, set()) == L
    with pytest.raises(ValueError):
        extend_constants(L, {"a"})
    with pytest.raises(ValueError):
        extend_constants(L, {"("})


def test_extended_language_is_substituted_language(systems):
    # a list is in L' exactly when renaming its constants to variables lands in L
    L = systems["reverse"].lang
    Lcd = extend_constants(L, {"c", "d"})
    toks = sorted(L.terminals()) + ["?x", "c", "d"]
    for k in range(6):
        for s in product(toks, repeat=k):
            back = tuple("?x" if t in ("c", "d") else t for t in s)
            assert member(Lcd, s) == member(L, back), s


def test_validate_closure(systems):
    for name in ("dual", "pa", "reverse"):
        assert validate_closure(systems[name].lang).ok
    bad = LGrammar((("f", "(", VAR, ")"), ("a",)), frozenset({"f", "a"}))
    rep = validate_closure(bad)
    assert not rep.ok
    assert any("bare variable" in v for v in rep.violations)


def test_undeclared_symbol_rejected():
    with pytest.raises(ValueError):
        LGrammar((("b",),), frozenset({"a"}))
    assert PARENS  # parentheses never need declaring
    LGrammar((("f", "(", "S", ")"), (VAR,)), frozenset({"f"}))
