"""The bundled corpus: locating it, reading its manifest, running its entries."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

from .files import load_proof, load_rderivation, load_system
from .kernel import check_proof
from .rsys import check_rderivation, rderivation_formulas, saturate
from .syntax import parse_formula, print_formula


def corpus_dir() -> Path:
    env = os.environ.get("INDUKT_CORPUS")
    if env:
        return Path(env)
    return Path(str(files("indukt") / "corpus"))


def resolve(name: str | Path) -> Path:
    """A path as given if it exists, else the file of that name in the corpus."""
    p = Path(name)
    if p.exists():
        return p
    q = corpus_dir() / p.name
    return q if q.exists() else p


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    kind: str
    system: str
    file: str = ""
    expect: str = "accept"
    failed_step: int | None = None
    reason: str = ""
    conclusion: str = ""
    extra: tuple[tuple[str, object], ...] = ()

    def get(self, key: str, default=None):
        return dict(self.extra).get(key, default)


@dataclass(frozen=True)
class EntryResult:
    id: str
    kind: str
    ok: bool
    verdict: str
    steps: int
    seconds: float
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{mark} {self.id:<18} {self.kind:<20} {self.verdict:<8} steps={self.steps}{tail}"


KNOWN = {"id", "kind", "system", "file", "expect", "failed_step", "reason", "conclusion"}


def load_manifest(root: Path | None = None) -> list[CorpusEntry]:
    root = root or corpus_dir()
    data = json.loads((root / "manifest.json").read_text())
    out = []
    for e in data["entries"]:
        extra = tuple(sorted((k, v) for k, v in e.items() if k not in KNOWN))
        out.append(CorpusEntry(**{k: v for k, v in e.items() if k in KNOWN}, extra=extra))
    return out


def run_entry(e: CorpusEntry, root: Path | None = None) -> EntryResult:
    root = root or corpus_dir()
    t0 = time.perf_counter()
    try:
        ok, verdict, steps, detail = _run(e, root)
    except Exception as exc:  # a crash is a failed entry, not a crashed run
        ok, verdict, steps, detail = False, "error", 0, f"{type(exc).__name__}: {exc}"
    return EntryResult(e.id, e.kind, ok, verdict, steps, time.perf_counter() - t0, detail)


def _expect_conclusion(e: CorpusEntry, got) -> str:
    if e.conclusion and (got is None or got != parse_formula(e.conclusion)):
        return f"conclusion {print_formula(got) if got is not None else '-'} != {e.conclusion}"
    return ""


def _run(e: CorpusEntry, root: Path) -> tuple[bool, str, int, str]:
    M = load_system(root / e.system)
    match e.kind:
        case "mproof":
            P = load_proof(root / e.file)
            rep = check_proof(M, P)
            verdict = "accept" if rep.accepted else "reject"
            bad = "" if verdict == e.expect else rep.summary()
            if not rep.accepted and e.expect == "reject":
                if e.failed_step is not None and rep.failed_step != e.failed_step:
                    bad = f"failed at {rep.failed_step}, expected {e.failed_step}"
                elif e.reason and rep.reason != e.reason:
                    bad = f"reason {rep.reason!r}"
            if rep.accepted and not bad:
                bad = _expect_conclusion(e, P.conclusion)
            return not bad, verdict, len(P.steps), bad
        case "rproof":
            D = load_rderivation(root / e.file)
            rep = check_rderivation(M.rsys, M.lang, D)
            verdict = "accept" if rep.accepted else "reject"
            bad = "" if verdict == e.expect else rep.summary()
            if rep.accepted and not bad and e.conclusion:
                last = parse_formula(rderivation_formulas(D)[-1])
                bad = _expect_conclusion(e, last)
            return not bad, verdict, len(D.steps), bad
        case "saturate":
            goal = parse_formula(e.conclusion)
            fs = saturate(M.rsys, M.lang, int(e.get("bound")), target=goal)
            found = goal in fs
            bad = "" if found else "target not derived"
            if found and e.get("golden"):
                D = load_rderivation(root / e.get("golden"))
                if parse_formula(rderivation_formulas(D)[-1]) != goal:
                    bad = "golden derivation proves a different fact"
                elif not check_rderivation(M.rsys, M.lang, D).accepted:
                    bad = "golden derivation rejected"
                rebuilt = fs.derivation(M.rsys, goal)
                if not bad and not check_rderivation(M.rsys, M.lang, rebuilt).accepted:
                    bad = "reconstructed derivation rejected"
            return not bad, "accept" if found else "reject", fs.stats.get("facts", 0), bad
        case "pipeline-3-3":
            from .pipelines import reversal_pipeline

            res = reversal_pipeline(root)
            got = res.final.proof.formula_at(res.results["ff(x)=x"])
            bad = _expect_conclusion(e, got)
            return not bad, "accept", len(res.final.proof.steps), bad
        case "induction-principle":
            from .pipelines import induction_principle, induction_target

            H = parse_formula(e.get("formula"))
            res = induction_principle(M, H)
            bad = "" if res.final.conclusion == induction_target(H) else "wrong conclusion"
            return not bad, "accept", len(res.final.proof.steps), bad
    raise ValueError(f"unknown entry kind {e.kind!r}")


def run_all(root: Path | None = None, jobs: int = 1) -> list[EntryResult]:
    root = root or corpus_dir()
    entries = load_manifest(root)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return list(pool.map(lambda e: run_entry(e, root), entries))
    return [run_entry(e, root) for e in entries]
