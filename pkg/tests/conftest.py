import random

import pytest

from coact import f2poly as fp
from coact import steenrod as st
from coact.cli import parser as ps


def P(text):
    return ps.parse(text)


def random_zeta_poly(rnd, dmax, terms):
    """A random element of A_* with monomials of degree <= dmax."""
    out = set()
    for _ in range(terms):
        d = rnd.randint(0, dmax)
        basis = st.basis(d)
        if basis:
            out ^= {rnd.choice(basis)}
    return frozenset(out)


@pytest.fixture
def rnd():
    return random.Random(20261014)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
