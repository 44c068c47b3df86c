import pytest

from dahalimit.combinat import compositions, pad
from dahalimit.delta import (
    apply_psi, commutation_suite, commutator_scalar, delta_pm_eigenvalue,
    delta_pm_level_eigenvalue, delta_pm_normalized, expected_commutator_scalar,
    finite_n_restriction_identity, gauss_binomial, coset_scalar_sum, lemma_identity_suite,
    limit_scalar, pitilde_conjugate, restricted_delta, restriction_test_vectors,
)
from dahalimit.hecke import apply_pitilde, apply_T, apply_Ytilde
from dahalimit.macdonald import compute_E, psi_scalar, verify_psi_eigen
from dahalimit.polyring import Poly, esym, kappa_eval, msym
from dahalimit.scalars import ONE, QQt, t_series
from dahalimit.stable import CAUCHY, STABILIZED, PhiIndex, check_convergence, check_vanishing
from dahalimit.symfun import SymSpec

q = QQt.monomial(1, 0)
t = QQt.monomial(0, 1)


def test_psi_examples():
    E = compute_E((2, 1))
    assert apply_psi(SymSpec.e(2), 2, E.poly) == E.poly.scale(q ** 3 * t ** 3)
    assert apply_psi(SymSpec.e(3), 2, E.poly) == Poly.zero(2)
    assert apply_psi("p1", 2, Poly.var(1, 2)) == Poly.var(1, 2).scale(q * t + t ** 2)


def test_psi_general_partition_is_product():
    f = compute_E((0, 1, 1)).poly
    lhs = apply_psi(SymSpec.e(2, 1), 3, f)
    rhs = apply_psi(SymSpec.e(2), 3, apply_psi(SymSpec.e(1), 3, f))
    assert lhs == rhs


@pytest.mark.parametrize("F", ["e1", "e2", "p1", "p2", "p3"])
def test_psi_eigen_all_small(F):
    spec = SymSpec(F[0], (int(F[1]),))
    for n in (1, 2, 3):
        for d in range(0, 3):
            for mu in compositions(d, n):
                assert verify_psi_eigen(spec, mu), (F, mu)


@pytest.mark.parametrize("F", [SymSpec.e(1), SymSpec.e(2), SymSpec.p(2)])
@pytest.mark.parametrize("nu", [(1,), (2, 1), (1, 1)])
def test_level_eigenvalues_converge_to_kappa(F, nu):
    levels = range(len(nu) + 1, len(nu) + 6)
    rep = check_convergence(lambda n: psi_scalar(F, pad(nu, n), n), 0, levels, 10, expand=False)
    assert rep.verdict == CAUCHY
    lim = rep.limit()["scalar"]
    assert lim.agrees_with(t_series(kappa_eval(F, nu), 10), lim.order)
    assert lim.order >= 5


def test_restricted_formula_e2_k3():
    formula = restricted_delta(3, 2)
    assert [term.s for term in formula.terms] == [0, 1, 2]
    assert [term.scalar for term in formula.terms] == [
        ONE, t / (ONE - t), t ** 3 / ((ONE - t) * (ONE - t ** 2))]
    assert formula.text() == (
        "Yt1*Yt2 + Yt1*Yt3 + Yt2*Yt3"
        " + (t/(1 - t))*(Yt1 + Yt2 + Yt3)*eps_3*T3*T2*T1*pi"
        " + (t^3/((1 - t)*(1 - t^2)))*eps_3*T3*T2*T1*T4*T3*T2*pi^2")


def test_restricted_formula_single_terms():
    f = restricted_delta(0, 4)
    assert len(f.terms) == 1
    assert f.terms[0].scalar == t ** 10 / ((ONE - t) * (ONE - t ** 2) * (ONE - t ** 3) * (ONE - t ** 4))
    assert f.text() == "(t^10/((1 - t)*(1 - t^2)*(1 - t^3)*(1 - t^4)))*eps_0*pi^4"
    f = restricted_delta(0, 1)
    assert f.text() == "(t/(1 - t))*eps_0*pi"


def test_limit_scalar_products():
    for s in range(5):
        expected = ONE
        for i in range(1, s + 1):
            expected = expected * t ** i / (ONE - t ** i)
        assert limit_scalar(s) == expected


def test_restriction_identity_examples():
    x1 = Poly.var(1, 4)
    assert finite_n_restriction_identity(1, 1, 4, x1 * esym(1, 4))
    assert finite_n_restriction_identity(0, 1, 3, esym(2, 3))
    x12 = Poly.var(1, 5) * Poly.var(2, 5)
    assert finite_n_restriction_identity(2, 2, 5, x12 * msym((1,), 5))


def test_restriction_identity_preconditions():
    with pytest.raises(ValueError):
        finite_n_restriction_identity(1, 1, 2, Poly.var(1, 2))
    with pytest.raises(ValueError):
        finite_n_restriction_identity(1, 1, 4, Poly.var(2, 4))
    with pytest.raises(ValueError):
        finite_n_restriction_identity(1, 1, 4, Poly.parse("x1*x2", 4))


@pytest.mark.parametrize("k,r,n", [(0, 1, 4), (1, 2, 5), (2, 1, 5)])
def test_restriction_limit_scalars_differ_from_finite(k, r, n):
    # the finite identity needs the level-n prefactors; the limit ones are off by t-small terms
    for _, f in restriction_test_vectors(k, n):
        if not f.is_zero():
            lhs = apply_psi(SymSpec.e(r), n, f)
            rhs = restricted_delta(k, r).evaluate(n, f, finite=False)
            assert lhs != rhs or r == 0
            assert (lhs - rhs).min_valuation() >= n - k - r + 1
            break


def test_lemma_suite_examples():
    assert lemma_identity_suite(4, 1, 1, 3).ok
    assert lemma_identity_suite(5, 1, 2, 2).ok
    assert coset_scalar_sum(4, 1, 2) == ONE + t + t ** 2 == gauss_binomial(4, 1, 2)


def test_lemma_suite_rejects_small_n():
    with pytest.raises(ValueError):
        lemma_identity_suite(3, 1, 2, 1)


def test_delta_pm_on_x1_tends_to_x1():
    rep = check_convergence(lambda n: delta_pm_normalized(1, n, Poly.var(1, n)), 1, range(2, 7))
    assert rep.verdict in (STABILIZED, CAUCHY)
    (key, series), = rep.limit().items()
    assert key == PhiIndex((1,), ())
    assert series.agrees_with(t_series(ONE, series.order), series.order)


def test_delta_pm_unit_vanishes():
    for m in (1, 2):
        rep = check_vanishing(lambda n: delta_pm_normalized(m, n, Poly.one(n)), range(2, 7))
        assert rep.verdict == CAUCHY and rep.top_valuation >= 4


def test_delta_pm_level_eigenvalue_matches_operator():
    for nu in [(1,), (2, 1), (0, 1)]:
        E = compute_E(nu, 3)
        lhs = delta_pm_normalized(2, 3, E.poly)
        assert lhs == E.poly.scale(delta_pm_level_eigenvalue(2, nu, 3))


def test_delta_pm_eigenvalue_closed_form():
    assert delta_pm_eigenvalue(1, (1,)) == ONE
    assert delta_pm_eigenvalue(1, (2, 1)) == ONE + q + t


def test_exact_commutations_examples():
    n = 4
    for m in Poly.one(n), Poly.parse("x1^2*x3", n), Poly.parse("x2*x4 + x1", n):
        assert apply_psi("e2", n, apply_T(1, m)) == apply_T(1, apply_psi("e2", n, m))
        assert (apply_pitilde(apply_psi("p2", n, m)) == pitilde_conjugate("p2", n, m))
        assert apply_Ytilde(2, apply_pitilde(m)) == apply_pitilde(apply_Ytilde(1, m))


def test_pitilde_delta_on_x1():
    def fam(n):
        f = Poly.var(1, n)
        lhs = apply_pitilde(apply_psi("p1", n, f)) - apply_psi("p1", n, apply_pitilde(f))
        return lhs - apply_Ytilde(1, apply_pitilde(f)).scale(ONE / q - ONE)

    rep = check_vanishing(fam, range(3, 7))
    assert rep.verdict == STABILIZED


def test_commutation_suite_exact_tier_small():
    rep = commutation_suite(range(3, 5), degree_bound=2, series_order=3)
    exact = [r for r in rep.results if r.level_or_exact.startswith("exact")]
    assert exact and all(r.ok for r in exact)
    for r in rep.results:
        assert set(r.to_json()) >= {"relation", "level_or_exact", "status", "witness"}


def test_commutator_scalar():
    for m in (1, 2):
        cs = commutator_scalar(m, range(3, 6))
        assert cs.ok
        assert cs.scalar == expected_commutator_scalar(m) == QQt.monomial(-m, -m)
