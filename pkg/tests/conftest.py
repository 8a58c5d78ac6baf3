import sys
from pathlib import Path

import pytest

from imagemilnor.germfile import load_germ_file
from imagemilnor.parse import parse_polynomial

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
ACCEPTANCE_LINES = []


@pytest.fixture
def corpus():
    return lambda name: load_germ_file(CORPUS / f"{name}.germ")


def poly(text, variables):
    return parse_polynomial(text, tuple(variables))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
