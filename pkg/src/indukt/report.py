"""TSV and PNG summaries of a corpus run."""

from __future__ import annotations

import csv
from pathlib import Path

from .corpus_run import EntryResult

COLUMNS = ("id", "kind", "ok", "verdict", "steps", "seconds", "detail")


def write_tsv(results: list[EntryResult], path: Path, timings: bool = True) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(COLUMNS)
        for r in results:
            secs = f"{r.seconds:.3f}" if timings else ""
            w.writerow((r.id, r.kind, "1" if r.ok else "0", r.verdict, r.steps, secs, r.detail))


def write_png(results: list[EntryResult], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    ids = [r.id for r in results]
    colors = ["tab:green" if r.ok else "tab:red" for r in results]
    top.bar(ids, [max(r.steps, 1) for r in results], color=colors)
    top.set_yscale("log")
    top.set_ylabel("steps / facts")
    bottom.bar(ids, [r.seconds for r in results], color=colors)
    bottom.set_ylabel("seconds")
    bottom.tick_params(axis="x", labelrotation=60)
    for label in bottom.get_xticklabels():
        label.set_horizontalalignment("right")
    top.set_title(f"corpus run: {sum(r.ok for r in results)}/{len(results)} entries as expected")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(results: list[EntryResult], out: str | Path) -> tuple[Path, Path]:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    tsv, png = out / "corpus.tsv", out / "corpus.png"
    write_tsv(results, tsv)
    write_png(results, png)
    return tsv, png
