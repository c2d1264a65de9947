import os
import sys
from pathlib import Path

import pytest

from indukt.corpus_run import corpus_dir
from indukt.files import load_proof, load_rderivation, load_system
from indukt.notation import Notation

CORPUS = corpus_dir()


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs for more than a few seconds")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("INDUKT_SLOW"):
        return
    skip = pytest.mark.skip(reason="slow; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l[2:4])):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus() -> Path:
    return CORPUS


@pytest.fixture(scope="session")
def systems():
    names = ["dual", "reverse", "reverse-cd", "spa", "pa", "qsys"]
    return {n: load_system(CORPUS / f"{n}.msys") for n in names}


@pytest.fixture(scope="session")
def proofs():
    return {p.stem: load_proof(p) for p in sorted(CORPUS.glob("*.mproof"))}


@pytest.fixture(scope="session")
def rproofs():
    return {p.stem: load_rderivation(p) for p in sorted(CORPUS.glob("*.rproof"))}


@pytest.fixture(scope="session")
def nd():
    return Notation("xyuvz", "D Q")


@pytest.fixture(scope="session")
def nr():
    return Notation("xystuv", "W")


@pytest.fixture(scope="session")
def ns():
    return Notation("xyuw", "N0")
