import os

import pytest

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dahalimit.polyring import Poly
from dahalimit.scalars import QQt

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def int_poly2(draw, max_terms=3, max_deg=2):
    """Raw-free construction: a small integer polynomial in q, t as QQt."""
    terms = draw(st.lists(
        st.tuples(st.integers(0, max_deg), st.integers(0, max_deg), st.integers(-3, 3)),
        max_size=max_terms,
    ))
    out = QQt(0)
    for a, b, c in terms:
        out = out + QQt.monomial(a, b, c)
    return out


@st.composite
def qqts(draw, nonzero=False):
    num = draw(int_poly2())
    den = draw(int_poly2().filter(bool))
    value = num / den
    if nonzero and not value:
        value = QQt(1)
    return value


@st.composite
def polys(draw, n, max_deg=2, max_terms=3):
    """A small polynomial in ``n`` variables with simple scalar coefficients."""
    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(n)])
    items = draw(st.lists(st.tuples(exps, int_poly2(max_terms=2, max_deg=1)), max_size=max_terms))
    terms = {}
    for e, c in items:
        if sum(e) <= max_deg and c:
            terms[e] = terms.get(e, QQt(0)) + c
    return Poly(n, terms)


# One summary line per acceptance criterion, printed after the run.
_CRITERIA = {}


@pytest.fixture
def criterion():
    def record(num, ok, detail=""):
        _CRITERIA[num] = (ok, detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        ok, detail = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
