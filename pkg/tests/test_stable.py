import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dahalimit.combinat import beta_index, partitions, reduced_compositions
from dahalimit.hecke import apply_Ytilde
from dahalimit.polyring import Poly, esym, msym
from dahalimit.scalars import ONE, ZERO, QQt
from dahalimit.stable import (
    CAUCHY, DIVERGED, STABILIZED, BelowThresholdError, PhiIndex, SymmetryError,
    almost_sym_expand, check_convergence, check_vanishing, classify, tilde_E_level,
    weight_formula,
)

q = QQt.monomial(1, 0)
t = QQt.monomial(0, 1)


def P(text, n):
    return Poly.parse(text, n)


def test_phi_index():
    idx = PhiIndex.parse("(1,2|3)")
    assert idx == PhiIndex((1, 2), (3,))
    assert str(idx) == "(1,2|3)"
    assert idx.size == 6 and idx.length == 3
    assert PhiIndex.parse(str(PhiIndex((), ()))) == PhiIndex()
    with pytest.raises(ValueError):
        PhiIndex((1, 0), ())
    with pytest.raises(ValueError):
        PhiIndex((), (1, 2))


def test_expand_examples():
    ex = almost_sym_expand(P("x1^2 + x1*x2 + x1*x3", 3), 1)
    assert ex.coeffs == {PhiIndex((1,), (1,)): ONE}
    ex = almost_sym_expand(msym((2, 1), 4), 0)
    assert ex.coeffs == {PhiIndex((), (2, 1)): ONE}
    ex = almost_sym_expand(P("x1*x2", 4), 2)
    assert ex.coeffs == {PhiIndex((1, 1), ()): ONE}


def test_expand_errors():
    with pytest.raises(SymmetryError):
        almost_sym_expand(P("x2", 3), 1)
    with pytest.raises(BelowThresholdError):
        almost_sym_expand(P("x1*x2^2 + x1*x3^2", 3), 1)


def _basis(n, k, d):
    out = []
    for a in range(d + 1):
        for mu in reduced_compositions(a, k):
            for lam in partitions(d - a):
                out.append(PhiIndex(mu, lam))
    return out


@settings(max_examples=25)
@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_expansion_round_trip(k, d, data):
    n = d + k + 1
    basis = [idx for idx in _basis(n, k, d) if idx.length <= n]
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
    f = Poly.zero(n)
    for idx, c in zip(basis, coeffs):
        f = f + idx.basis_element(n).scale(QQt(c))
    ex = almost_sym_expand(f, k)
    assert ex.resum() == f
    assert ex.coeffs == {idx: QQt(c) for idx, c in zip(basis, coeffs) if c}
    assert all(len(idx.mu) <= k for idx in ex.coeffs)


def test_tilde_E_examples():
    for n in (2, 3):
        assert tilde_E_level(PhiIndex((1,), ()), n) == Poly.var(1, n)
    f = tilde_E_level(PhiIndex((), (1,)), 3)
    assert f == msym((1,), 3).scale(ONE / (ONE + t + t ** 2))
    for n in (1, 2, 3):
        assert tilde_E_level(PhiIndex(), n) == Poly.one(n)
    with pytest.raises(ValueError):
        tilde_E_level(PhiIndex((1,), (1,)), 2)


def test_weight_examples():
    assert weight_formula(PhiIndex((1,), ()), 1) == q * t
    assert weight_formula(PhiIndex((1,), ()), 2) == ZERO
    idx = PhiIndex((4, 1, 2), (5, 4, 2, 2, 1))
    b = beta_index((4, 1, 2, 5, 4, 2, 2, 1), 2)
    assert b == 1  # only nu_2 itself is <= 1 among j <= 2; nothing after is below 1
    assert weight_formula(idx, 2) == QQt.monomial(1, 3 + 5 + 1 - b)


def test_classify():
    inf = math.inf
    assert classify([inf, inf], 3) == STABILIZED
    assert classify([2, 3, 5], 4) == CAUCHY
    assert classify([2, 2, 5], 4) == DIVERGED
    assert classify([3], 2) == DIVERGED
    assert classify([2, inf, 4], 4) == DIVERGED


def test_convergence_examples():
    rep = check_convergence(lambda n: tilde_E_level(PhiIndex((1,), ()), n), 1, range(2, 6))
    assert rep.verdict == STABILIZED
    assert rep.limit()[PhiIndex((1,), ())].resum() == ONE

    rep = check_convergence(lambda n: esym(1, n), 0, range(2, 6))
    assert rep.verdict == STABILIZED
    assert set(rep.limit()) == {PhiIndex((), (1,))}

    def weight_diff(n):
        E = tilde_E_level(PhiIndex((1,), ()), n)
        return apply_Ytilde(1, E) - E.scale(q * t)

    rep = check_convergence(weight_diff, 1, range(2, 6))
    assert rep.verdict == STABILIZED and rep.tracks == {}


def test_convergence_detects_divergence():
    rep = check_convergence(lambda n: esym(1, n).scale(QQt(n)), 0, range(2, 6))
    assert rep.verdict == DIVERGED
    assert "(|1)" in rep.note


def test_cauchy_family_and_json():
    rep = check_convergence(lambda n: tilde_E_level(PhiIndex((), (1,)), n), 0, range(2, 7))
    assert rep.verdict == CAUCHY
    assert rep.final_valuation >= 4
    data = rep.to_json()
    key = data["keys"][0]
    assert set(key["levels"][0]) == {"level", "coeff", "diff_valuation"}
    assert data["verdict"] == CAUCHY


def test_vanishing_report():
    rep = check_vanishing(lambda n: Poly.one(2).scale(t ** n), range(2, 6))
    assert rep.verdict == CAUCHY and rep.top_valuation == 5 and rep.passes(4)


def test_restriction_compatibility():
    idx = PhiIndex((), (1,))
    vals = []
    for n in range(2, 6):
        diff = tilde_E_level(idx, n + 1).restrict(n) - tilde_E_level(idx, n)
        vals.append(diff.min_valuation())
    assert vals == sorted(vals) and vals[-1] > vals[0]


@pytest.mark.parametrize("idx", [
    PhiIndex((1,), ()), PhiIndex((2,), ()), PhiIndex((), (1,)), PhiIndex((1,), (1,)),
    PhiIndex((1, 1), ()), PhiIndex((0, 1), ()), PhiIndex((2,), (1,)), PhiIndex((1, 1), (1,)),
])
def test_weight_property(idx):
    for i in range(1, 4):
        w = weight_formula(idx, i)
        levels = [n for n in range(2, 7) if n >= max(idx.length + 1, i)]

        def fam(n):
            E = tilde_E_level(idx, n)
            return apply_Ytilde(i, E) - E.scale(w)

        rep = check_vanishing(fam, levels)
        assert rep.verdict in (STABILIZED, CAUCHY), (i, rep.valuations)


def test_tilde_E_independent_at_level():
    n = 5
    idxs = [PhiIndex((2,), ()), PhiIndex((1,), (1,)), PhiIndex((), (2,)), PhiIndex((), (1, 1)),
            PhiIndex((1, 1), ()), PhiIndex((0, 2), ()), PhiIndex((0, 1), (1,))]
    exps = [almost_sym_expand(tilde_E_level(i, n), 2).coeffs for i in idxs]
    keys = sorted({k for e in exps for k in e})
    rows = [[e.get(k, ZERO) for k in keys] for e in exps]
    rank = 0
    for j in range(len(keys)):
        piv = next((r for r in range(rank, len(rows)) if rows[r][j]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][j]:
                f = rows[r][j] / rows[rank][j]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    assert rank == len(idxs)
