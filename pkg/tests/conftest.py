from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from hexasys.billiard import systole_scan
from hexasys.plane import EDGES, PlanePoint

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

rationals = st.fractions(min_value=-1, max_value=1, max_denominator=256)
unit = st.fractions(min_value=0, max_value=1, max_denominator=256)


def _from_forms(p0, p1):
    # inverse of (p0, p1, p2) = (Y, -X - Y/2, X - Y/2)
    return PlanePoint(-p1 - p0 / 2, p0)


@st.composite
def hex_points(draw):
    """Points of H with small rational coordinates, drawn through their forms."""
    p0 = draw(rationals)
    lo, hi = max(Fraction(-1), -1 - p0), min(Fraction(1), 1 - p0)
    t = draw(unit)
    return _from_forms(p0, lo + t * (hi - lo))


@st.composite
def edge_points(draw, edge, interior=True):
    """A point of ``edge``, strictly inside it by default."""
    k, s = edge
    # parametrize by one of the other two forms, which ranges over [-1, 0] or [0, 1]
    j = (k + 1) % 3
    t = draw(st.fractions(min_value=0, max_value=1, max_denominator=256))
    if interior:
        t = Fraction(1, 257) + t * Fraction(255, 257)
    pj = -s * t
    p = [None, None, None]
    p[k], p[j] = Fraction(s), pj
    p[3 - k - j] = -p[k] - p[j]
    return _from_forms(p[0], p[1])


edges = st.sampled_from(EDGES)
small_dirs = st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(lambda v: v != (0, 0))


@pytest.fixture(scope="session")
def scan_3_3_64():
    return systole_scan(3, 3, 64, 64)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
