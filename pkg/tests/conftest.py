from __future__ import annotations

from pathlib import Path

import pytest

from dconormal.cli import parse_variety
from dconormal.exactpoly import VariableSet
from dconormal.parsing import parse_polynomial

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def load(name: str):
    return parse_variety((CORPUS / name).read_text())


def poly(text: str, names):
    vs = names if isinstance(names, VariableSet) else VariableSet(tuple(names.split()))
    return parse_polynomial(text, vs)


@pytest.fixture(scope="session")
def cone():
    return load("cone3.var")


@pytest.fixture(scope="session")
def umbrella():
    return load("umbrella.var")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
