"""Restricted argument-list languages given by single-nonterminal grammars."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .syntax import PARENS, ListExpr, is_var
from .binding import subst_list

NONTERMINAL = "S"
VAR = "VAR"


@dataclass(frozen=True)
class LGrammar:
    alternatives: tuple[tuple[str, ...], ...]
    alphabet: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for alt in self.alternatives:
            for tok in alt:
                if tok in (NONTERMINAL, VAR) or tok in PARENS:
                    continue
                if tok not in self.alphabet:
                    raise ValueError(f"grammar uses undeclared symbol {tok!r}")

    def terminals(self) -> frozenset[str]:
        return frozenset(
            t for alt in self.alternatives for t in alt if t not in (NONTERMINAL, VAR)
        )


def member(L: LGrammar, lst: ListExpr) -> bool:
    return _member(L, tuple(lst))


@lru_cache(maxsize=64)
def _concat_units(L: LGrammar) -> frozenset[str] | None:
    """Single-token alternatives, when S S makes any nonempty string of them a member."""
    if (NONTERMINAL, NONTERMINAL) not in L.alternatives:
        return None
    return frozenset(alt[0] for alt in L.alternatives if len(alt) == 1 and alt[0] != NONTERMINAL)


@lru_cache(maxsize=1 << 18)
def _member(L: LGrammar, toks: ListExpr) -> bool:
    units = _concat_units(L)
    if units is not None and toks and all((VAR if is_var(t) else t) in units for t in toks):
        return True
    n = len(toks)
    # bit j of ends[i] is set when S derives toks[i:j]
    masks: dict[str, int] = {}
    var_mask = 0
    for p, tok in enumerate(toks):
        if is_var(tok):
            var_mask |= 1 << p
        else:
            masks[tok] = masks.get(tok, 0) | (1 << p)
    # each alternative as a row of token masks, None standing for S
    rows = [
        tuple(None if sym == NONTERMINAL else var_mask if sym == VAR else masks.get(sym, 0) for sym in alt)
        for alt in L.alternatives
    ]
    ends = [0] * (n + 1)
    for i in range(n, -1, -1):
        start = 1 << i
        while True:
            before = ends[i]
            for row in rows:
                reach = start
                for m in row:
                    if m is None:
                        nxt = 0
                        while reach:
                            low = reach & -reach
                            nxt |= ends[low.bit_length() - 1]
                            reach ^= low
                        reach = nxt
                    else:
                        reach = (reach & m) << 1
                    if not reach:
                        break
                ends[i] |= reach
            if ends[i] == before:
                break
    return bool(ends[0] >> n & 1)


def enumerate_ground(L: LGrammar, max_len: int) -> list[ListExpr]:
    """All variable-free members of length <= max_len, ordered by (length, tokens)."""
    return list(_enumerate(L, max_len))


@lru_cache(maxsize=64)
def _enumerate(L: LGrammar, max_len: int) -> tuple[ListExpr, ...]:
    exact: list[set[ListExpr]] = [set() for _ in range(max_len + 1)]
    alts = [alt for alt in L.alternatives if VAR not in alt]

    def fill(alt: tuple[str, ...], k: int, budget: int) -> list[ListExpr]:
        if k == len(alt):
            return [()] if budget == 0 else []
        sym = alt[k]
        if sym != NONTERMINAL:
            if budget < 1:
                return []
            return [(sym,) + rest for rest in fill(alt, k + 1, budget - 1)]
        out = []
        for size in range(budget + 1):
            for head in exact[size]:
                for rest in fill(alt, k + 1, budget - size):
                    out.append(head + rest)
        return out

    for n in range(max_len + 1):
        while True:
            before = len(exact[n])
            for alt in alts:
                exact[n].update(fill(alt, 0, n))
            if len(exact[n]) == before:
                break
    return tuple(lst for n in range(max_len + 1) for lst in sorted(exact[n]))


def extend_constants(L: LGrammar, consts: frozenset[str] | set[str]) -> LGrammar:
    consts = frozenset(consts)
    clash = consts & (L.alphabet | PARENS)
    if clash:
        raise ValueError(f"constants clash with the alphabet: {sorted(clash)}")
    if not consts:
        return L
    alts = L.alternatives + tuple((c,) for c in sorted(consts))
    return LGrammar(alts, L.alphabet | consts)


@dataclass(frozen=True)
class ClosureReport:
    ok: bool
    violations: tuple[str, ...] = ()


def validate_closure(L: LGrammar, samples: int = 1000, seed: int = 0) -> ClosureReport:
    problems: list[str] = []
    if (VAR,) not in L.alternatives:
        problems.append("VAR is not a complete alternative of S")
    for alt in L.alternatives:
        if VAR in alt and alt != (VAR,):
            problems.append(f"VAR used inside alternative {' '.join(alt)}")
    if not member(L, ("?x",)):
        problems.append("a bare variable is not a member")
    pool = [lst for lst in enumerate_ground(L, 5)]
    if pool:
        rng = random.Random(seed)
        open_pool = [_open_up(lst, rng) for lst in pool]
        for _ in range(samples):
            lam, mu = rng.choice(open_pool), rng.choice(open_pool)
            if not (member(L, lam) and member(L, mu)):
                continue
            x = rng.choice(["?x", "?y"])
            out = subst_list(lam, x, mu)
            if not member(L, out):
                problems.append(f"{' '.join(lam)} with {x}:={' '.join(mu)} leaves L")
                break
    return ClosureReport(not problems, tuple(problems))


def _open_up(lst: ListExpr, rng: random.Random) -> ListExpr:
    # swap a symbol for a variable now and then so that substitutions bite
    if not lst or rng.random() < 0.5:
        return lst
    i = rng.randrange(len(lst))
    if lst[i] in PARENS:
        return lst
    return lst[:i] + (rng.choice(["?x", "?y"]),) + lst[i + 1 :]


def has_ground_member(L: LGrammar) -> bool:
    return any(True for _ in _enumerate(L, 6))
