import random

import pytest

from surgerykit.corpus import load_corpus
from surgerykit.groups import binary_icosahedral_table
from surgerykit.laurent import LaurentPoly
from surgerykit.linkdiag import BraidWord


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def ico():
    return binary_icosahedral_table()


def random_braid(rng: random.Random, max_strands=5, max_len=12) -> BraidWord:
    s = rng.randint(1, max_strands)
    if s == 1:
        return BraidWord(1, ())
    letters = tuple(rng.choice((1, -1)) * rng.randint(1, s - 1) for _ in range(rng.randint(0, max_len)))
    return BraidWord(s, letters)


def random_poly(rng: random.Random, variables=("t",), nterms=4, span=3, cmax=5) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, nterms)):
        e = tuple(rng.randint(-span, span) for _ in variables)
        terms[e] = terms.get(e, 0) + rng.randint(-cmax, cmax)
    return LaurentPoly(variables, {e: c for e, c in terms.items() if c})


# One line per acceptance criterion, echoed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
