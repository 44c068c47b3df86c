import pytest
from hypothesis import given, settings

from dahalimit import hecke as H
from dahalimit.combinat import monomials_up_to
from dahalimit.hecke import (
    apply_eps, apply_pi, apply_pitilde, apply_rho, apply_T, apply_Tinv, apply_X, apply_Y,
    apply_Y_word, apply_Ytilde, check_daha_relations, eval_opexpr,
)
from dahalimit.polyring import Poly, esym
from dahalimit.scalars import ONE, QQt
from conftest import polys

q = QQt.monomial(1, 0)
t = QQt.monomial(0, 1)


def P(text, n):
    return Poly.parse(text, n)


def monomials(n, d):
    return [Poly.monomial(m) for m in monomials_up_to(n, d)]


def test_T_examples():
    assert apply_T(1, P("x1", 2)) == P("x2 + (1 - t)*x1", 2)
    assert apply_T(1, P("x1*x2", 2)) == P("x1*x2", 2)
    assert apply_T(1, P("x2", 2)) == P("t*x1", 2)


def test_Tinv_examples():
    assert apply_Tinv(1, P("x1*x2", 2)) == P("x1*x2", 2)
    f = P("x1^2*x2", 2)
    assert apply_Tinv(1, apply_T(1, f)) == f
    # T1(x2) = t*x1, so T1^-1(x1) = x2/t exactly
    assert apply_Tinv(1, P("x1", 2)) == P("x2/t", 2)


def test_pi_examples():
    assert apply_pi(P("x1^2*x2", 3)) == P("x2^2*x3", 3)
    assert apply_pi(P("x2", 2)) == P("q*x1", 2)
    f = P("x1", 3)
    for _ in range(3):
        f = apply_pi(f)
    assert f == P("q*x1", 3)


def test_pitilde_examples():
    assert apply_pitilde(Poly.one(2)) == P("x1", 2)
    assert apply_pitilde(P("x1", 2)) == P("x1*x2/t", 2)
    for n in (3, 4):
        assert apply_pitilde(Poly.one(n)) == Poly.var(1, n)


def test_rho_examples():
    assert apply_rho(P("x1 + x2", 2)) == P("x1", 2)
    assert apply_rho(P("x2^2*x3", 3)) == Poly.zero(3)
    assert apply_rho(P("x1*x2 + 5*x1^2", 2)) == P("x1*x2 + 5*x1^2", 2)


def test_eps_examples():
    f = P("x1*(x2 + x3)", 3)
    assert apply_eps(1, f) == f
    # (1/[2]_t!) (t*x1 + T1 x1)
    expected = (P("x1", 2).scale(t) + apply_T(1, P("x1", 2))).scale(ONE / (ONE + t))
    assert apply_eps(0, P("x1", 2)) == expected == P("(x1 + x2)/(1 + t)", 2)
    with pytest.raises((ValueError, IndexError)):
        apply_eps(2, P("x1", 2))


@pytest.mark.parametrize("n,k", [(2, 0), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2)])
def test_eps_factored_matches_bfs(n, k):
    for f in monomials(n, 2):
        assert apply_eps(k, f) == apply_eps(k, f, method="bfs")


@settings(max_examples=15)
@given(polys(4))
def test_eps_idempotent_and_absorbing(f):
    for k in (0, 1, 2):
        g = apply_eps(k, f)
        assert apply_eps(k, g) == g
        for i in range(k + 1, 4):
            assert apply_T(i, g) == g
            assert apply_eps(k, apply_T(i, f)) == g


def test_Y_examples():
    assert apply_Y(1, Poly.one(2)) == Poly.one(2)
    assert apply_Y(1, P("x1", 2)) == P("q/t*x1", 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_Y_commute(n):
    for f in monomials(n, 2 if n == 4 else 3):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                assert apply_Y(i, apply_Y(j, f)) == apply_Y(j, apply_Y(i, f))


@pytest.mark.parametrize("n", [2, 3])
def test_Y_recursion_matches_words(n):
    for f in monomials(n, 2):
        for i in range(1, n + 1):
            assert apply_Y(i, f) == apply_Y_word(i, f)


def test_Ytilde_examples():
    for n in (2, 3, 4):
        x1 = Poly.var(1, n)
        assert apply_Ytilde(1, x1) == x1.scale(q * t)
        assert apply_Ytilde(1, Poly.one(n)) == Poly.zero(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_Ytilde_X_equals_tn_Y_X(n):
    tn = QQt.monomial(0, n)
    for f in monomials(n, 2):
        for i in range(1, n + 1):
            xf = apply_X(i, f)
            assert apply_Ytilde(i, xf) == apply_Y(i, xf).scale(tn)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pitilde_commutations(n):
    for f in monomials(n, 2):
        assert apply_Y(1, apply_pitilde(f)) == apply_pitilde(apply_Y(n, f)).scale(q)
        for i in range(1, n):
            assert apply_Y(i + 1, apply_pitilde(f)) == apply_pitilde(apply_Y(i, f))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_quadratic_and_braid(n):
    for f in monomials(n, 3):
        for i in range(1, n):
            g = apply_T(i, f)
            assert apply_T(i, g) + g.scale(t) - g - f.scale(t) == Poly.zero(n)
        for i in range(1, n - 1):
            a = apply_T(i, apply_T(i + 1, apply_T(i, f)))
            b = apply_T(i + 1, apply_T(i, apply_T(i + 1, f)))
            assert a == b


def test_index_validation():
    with pytest.raises(IndexError):
        apply_T(2, P("x1", 2))
    with pytest.raises(IndexError):
        apply_Y(3, P("x1", 2))
    with pytest.raises(IndexError):
        eval_opexpr(H.T(3), 3, P("x1", 3))


def test_opexpr_composition_order():
    f = P("x1", 3)
    assert eval_opexpr(H.word(H.Eps(0), H.PI), 3, f) == apply_eps(0, apply_pi(f))
    e = H.Prod((H.Sum((H.T(1), H.Scalar(-ONE))), H.Sum((H.T(1), H.Scalar(t)))))
    assert eval_opexpr(e, 2, P("x1", 2)) == Poly.zero(2)
    assert eval_opexpr(H.Pow(H.T(1), 2), 2, P("x1", 2)) == apply_T(1, apply_T(1, P("x1", 2)))


def test_opexpr_Tinv_X_relation():
    for f in monomials(3, 2):
        lhs = apply_Tinv(1, apply_X(1, apply_Tinv(1, f)))
        assert lhs == apply_X(2, f).scale(ONE / t)


def test_relations_small_cases():
    one = Poly.one(2)
    lhs = apply_Y(1, apply_X(1, apply_X(2, one)))
    rhs = apply_X(1, apply_X(2, apply_Y(1, one))).scale(q)
    assert lhs == rhs
    x2 = P("x2", 2)
    lhs = apply_Y(1, apply_T(1, apply_X(1, x2)))
    rhs = apply_X(2, apply_Y(1, apply_T(1, x2)))
    assert lhs == rhs


def test_relation_report_n3():
    rep = check_daha_relations(3, 3)
    assert rep.ok, rep.first_failure()
    rows = rep.to_json()
    assert {"relation", "level_or_exact", "status", "witness"} <= set(rows[0])


def test_relation_checker_detects_a_broken_operator(monkeypatch):
    real = H._Y_image

    def broken(i, n, m):
        img = real(i, n, m)
        if i == 2 and sum(m) == 1:
            return {k: {0: 2 * v.get(0, 0)} if v.get(0) else v for k, v in img.items()}
        return img

    monkeypatch.setattr(H, "_Y_image", broken)
    H.clear_caches()
    try:
        rep = check_daha_relations(2, 1)
        assert not rep.ok
        assert rep.first_failure().witness is not None
    finally:
        monkeypatch.undo()
        H.clear_caches()


def test_symmetric_input_fixed_by_T():
    f = esym(2, 4)
    for i in range(1, 4):
        assert apply_T(i, f) == f
