"""Delta operators: symmetric functions of the rescaled Cherednik operators.

``Psi_F^{(n)} = F[t^n Y_1 + ... + t^n Y_n]`` acts on level-``n`` polynomials;
its limits are the operators ``F[Delta]``. This module evaluates them, builds
the closed-form restriction of ``e_r[Delta]`` to ``x_1...x_k P(k)``, and
verifies the finite-level identities and limit relations around them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from . import kernel as K
from .combinat import min_coset_reps, perm_length, reduced_word
from .hecke import (
    Eps, PI, Pow, Prod, Scaled, Sum, T, Yt, _lin, _Y_image, apply_eps, apply_pi,
    apply_pitilde, apply_T, apply_Tinv, apply_X, apply_Ytilde, eval_opexpr, t_factorial,
)
from .kernel import pack
from .polyring import Poly, esym, msym
from .scalars import INFINITY, ONE, QQt, ZERO, t_series
from .stable import CAUCHY, STABILIZED, check_convergence, check_vanishing
from .symfun import SymSpec, as_power_sums

Q = QQt.monomial(1, 0)


def _tpow(e):
    return QQt.monomial(0, e)


def _frac(c):
    return QQt(c.numerator, c.denominator) if isinstance(c, Fraction) else QQt(c)


# ---------------------------------------------------------------------------
# Psi operators


def _Y_raw(i, n, F):
    return _lin(F, lambda m: _Y_image(i, n, m))


def psi_e_raw(r, n, F, indices=None):
    """``e_r`` of ``{t^n Y_i : i in indices}`` on a raw numerator map.

    The sum over ``r``-subsets shares prefixes: each partial product is
    computed once and extended by larger indices only.
    """
    idx = list(range(1, n + 1)) if indices is None else list(indices)
    if r == 0:
        return {m: dict(c) for m, c in F.items()}
    if r > len(idx):
        return {}
    out = {}

    def rec(start, depth, G):
        for j in range(start, len(idx) - (r - depth - 1)):
            H = _Y_raw(idx[j], n, G)
            if depth + 1 == r:
                K.xaccum(out, {0: 1}, H)
            else:
                rec(j + 1, depth + 1, H)

    rec(0, 0, F)
    return K.xscale(out, {pack(0, n * r): 1})


def psi_p_raw(m, n, F, indices=None):
    idx = range(1, n + 1) if indices is None else indices
    out = {}
    for i in idx:
        G = F
        for _ in range(m):
            G = _Y_raw(i, n, G)
        K.xaccum(out, {0: 1}, G)
    return K.xscale(out, {pack(0, n * m): 1})


def _as_spec(F):
    if isinstance(F, SymSpec):
        return F
    if isinstance(F, str):
        basis, rest = F[0], F[1:]
        return SymSpec(basis, tuple(int(p) for p in rest.strip("()").split(",")))
    raise TypeError(f"not a symmetric function spec: {F!r}")


def apply_psi(F, n, f, indices=None):
    """``Psi_F^{(n)} f``; ``F`` is a ``SymSpec``, a string like ``'e2'``, or a p-basis dict.

    ``indices`` restricts the alphabet to ``t^n Y_i`` for the listed ``i``.
    """
    if f.nvars != n:
        raise ValueError(f"polynomial has {f.nvars} variables but the level is {n}")
    num = f.raw()[0]
    if isinstance(F, dict):
        out = Poly.zero(n)
        for lam, c in as_power_sums(F).items():
            out = out + f.with_numerators(_apply_p_word(lam, n, num, indices)).scale(_frac(c))
        return out
    F = _as_spec(F)
    G = num
    for part in F.index:
        G = (psi_e_raw if F.basis == "e" else psi_p_raw)(part, n, G, indices)
    return f.with_numerators(G)


def _apply_p_word(lam, n, num, indices):
    G = num
    for part in lam:
        G = psi_p_raw(part, n, G, indices)
    return G


# ---------------------------------------------------------------------------
# closed-form restriction of e_r[Delta]


def _block(k, j):
    """``T_{k+j-1} ... T_j`` as generator list (empty when k = 0)."""
    return [T(i) for i in range(k + j - 1, j - 1, -1)]


def elementary_word(r, gens):
    """``e_r`` of non-commuting generators as a sum of increasing products."""
    if r == 0:
        return None
    terms = []
    for subset in combinations(gens, r):
        terms.append(subset[0] if r == 1 else Prod(tuple(subset)))
    if not terms:
        return Sum(())
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def limit_scalar(s):
    """``prod_{i=1}^s t^i / (1 - t^i)``."""
    out = ONE
    for i in range(1, s + 1):
        out = out * _tpow(i) / (ONE - _tpow(i))
    return out


def limit_scalar_text(s):
    """``limit_scalar(s)`` in factored form, e.g. ``t^3/((1 - t)*(1 - t^2))``."""
    if s == 0:
        return "1"
    num = _tpow(comb(s + 1, 2))
    dens = ["(1 - t)" if i == 1 else f"(1 - t^{i})" for i in range(1, s + 1)]
    den = dens[0][1:-1] if s == 1 else "*".join(dens)
    return f"{num}/({den})"


def finite_scalar(n, k, s):
    """``t^{C(s+1,2)} prod_{i=1}^s (1 - t^{n-k-s+i}) / (1 - t^i)``."""
    out = _tpow(comb(s + 1, 2))
    for i in range(1, s + 1):
        out = out * (ONE - _tpow(n - k - s + i)) / (ONE - _tpow(i))
    return out


@dataclass
class DeltaTerm:
    s: int
    scalar: QQt
    ytilde: object  # e_{r-s}(Yt_1..Yt_k) or None for e_0
    word: object    # eps_k and T blocks and pi^s, or None when s = 0

    def opexpr(self):
        factors = []
        if self.ytilde is not None:
            factors.append(self.ytilde)
        if self.word is not None:
            factors.extend(self.word.factors if isinstance(self.word, Prod) else [self.word])
        if not factors:
            raise ValueError("empty term")
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def text(self):
        from .dsl import print_opexpr

        body = print_opexpr(self.opexpr())
        if self.scalar == ONE:
            return body
        return f"({limit_scalar_text(self.s)})*{body}"


@dataclass
class RestrictedDeltaFormula:
    """``e_r[Delta]`` on ``x_1...x_k P(k)`` as a list of scalar-weighted words."""

    k: int
    r: int
    terms: list = field(default_factory=list)

    def text(self):
        return " + ".join(term.text() for term in self.terms)

    def opexpr(self):
        items = tuple(Scaled(term.scalar, term.opexpr()) for term in self.terms)
        return items[0] if len(items) == 1 else Sum(items)

    def evaluate(self, n, f, finite=True):
        """Apply at level ``n``; ``finite`` swaps in the exact level-``n`` prefactors."""
        out = Poly.zero(n)
        for term in self.terms:
            c = finite_scalar(n, self.k, term.s) if finite else term.scalar
            out = out + eval_opexpr(term.opexpr(), n, f).scale(c)
        return out

    def to_json(self):
        from .dsl import print_opexpr

        return {
            "k": self.k,
            "r": self.r,
            "terms": [
                {"s": term.s, "scalar": str(term.scalar), "word": print_opexpr(term.opexpr())}
                for term in self.terms
            ],
        }


def restricted_delta(k, r) -> RestrictedDeltaFormula:
    """Terms ``[prod t^i/(1-t^i)] e_{r-s}(Yt_1..Yt_k) eps_k (T_k..T_1)...(T_{k+s-1}..T_s) pi^s``.

    Terms whose elementary factor vanishes (``r - s > k``) are dropped. For
    ``s = 0`` the symmetrizer acts as the identity on the target space and is
    left out.
    """
    if k < 0 or r < 1:
        raise ValueError("need k >= 0 and r >= 1")
    gens = [Yt(i) for i in range(1, k + 1)]
    terms = []
    for s in range(0, r + 1):
        if r - s > k:
            continue
        yt = elementary_word(r - s, gens)
        word = None
        if s:
            factors = [Eps(k)]
            for j in range(1, s + 1):
                factors.extend(_block(k, j))
            factors.append(PI if s == 1 else Pow(PI, s))
            word = Prod(tuple(factors))
        terms.append(DeltaTerm(s, limit_scalar(s), yt, word))
    return RestrictedDeltaFormula(k, r, terms)


def check_restriction_domain(k, n, f):
    if any(any(e == 0 for e in m[:k]) for m in f.raw()[0]):
        raise ValueError(f"input is not divisible by x1...x{k}")
    if n - k >= 2 and not f.is_symmetric_in(k + 1, n):
        raise ValueError(f"input is not symmetric in x{k + 1}..x{n}")


def finite_n_restriction_identity(k, r, n, f) -> bool:
    """Exact level-``n`` form of the restriction formula on ``x_1..x_k``-divisible tail-symmetric ``f``."""
    if n <= k + r:
        raise ValueError(f"need n > k + r, got n={n}, k={k}, r={r}")
    if f.nvars != n:
        raise ValueError("level mismatch")
    check_restriction_domain(k, n, f)
    lhs = apply_psi(SymSpec.e(r), n, f)
    rhs = restricted_delta(k, r).evaluate(n, f, finite=True)
    return lhs == rhs


def restriction_test_vectors(k, n):
    """``x_1...x_k`` times ``1, e_1, e_2, m_(1), m_(2)`` at level ``n``."""
    head = Poly.one(n)
    for i in range(1, k + 1):
        head = head * Poly.var(i, n)
    vecs = [("1", Poly.one(n)), ("e1", esym(1, n)), ("e2", esym(2, n)),
            ("m1", msym((1,), n)), ("m2", msym((2,), n))]
    return [(name, head * v) for name, v in vecs]


# ---------------------------------------------------------------------------
# finite-level lemma suite


@dataclass
class CheckResult:
    relation: str
    level_or_exact: str
    status: str
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.status == "pass"

    def to_json(self):
        out = {"relation": self.relation, "level_or_exact": self.level_or_exact,
               "status": self.status, "witness": self.witness}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    name: str
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def to_json(self):
        return [r.to_json() for r in self.results]


def _monomials(n, degree):
    from .combinat import monomials_up_to

    return [Poly._make(n, {m: {0: 1}}) for m in monomials_up_to(n, degree)]


def _extensional(name, lhs, rhs, inputs, tag="exact"):
    for f in inputs:
        a, b = lhs(f), rhs(f)
        if a != b:
            return CheckResult(name, tag, "fail",
                               {"input": str(f), "difference": (a - b).to_json()})
    return CheckResult(name, tag, "pass", detail={"checked": len(inputs)})


def _apply_word(word, f):
    """Apply ``[(kind, index), ...]`` right to left; kinds: 'T', 'Ti', 'pi', 'X', 'eps'."""
    for kind, i in reversed(word):
        if kind == "T":
            f = apply_T(i, f)
        elif kind == "Ti":
            f = apply_Tinv(i, f)
        elif kind == "pi":
            f = apply_pi(f)
        elif kind == "X":
            f = apply_X(i, f)
        elif kind == "eps":
            f = apply_eps(i, f)
        else:  # pragma: no cover
            raise ValueError(kind)
    return f


def _T_sigma(perm, inverse=False):
    w = reduced_word(perm)
    if inverse:
        w = list(reversed(w))
    return [("T", i) for i in w]


def gauss_binomial(n, k, r):
    """``[n-k]_t! / ([n-k-r]_t! [r]_t!)`` as a scalar."""
    num = QQt.from_raw(t_factorial(n - k))
    den = QQt.from_raw(K.pmul(t_factorial(n - k - r), t_factorial(r)))
    return num / den


def coset_scalar_sum(n, k, r):
    top = comb(n - k, 2) - comb(n - k - r, 2) - comb(r, 2)
    total = ZERO
    for sigma in min_coset_reps(n, k, r):
        total = total + _tpow(top - perm_length(sigma))
    return total


def lemma_identity_suite(n, k, r, degree_bound) -> SuiteReport:
    """The five finite-level lemmas behind the restriction formula, checked exactly."""
    if not n > k + r >= 1:
        raise ValueError("need n > k + r >= 1")
    report = SuiteReport(f"lemmas n={n} k={k} r={r}")
    inputs = _monomials(n, degree_bound)
    tail = list(range(k + 1, n + 1))
    head = list(range(k + 1, k + r + 1))
    reps = min_coset_reps(n, k, r)

    def tail_e(f):
        return f.with_numerators(psi_e_raw(r, n, f.raw()[0], tail))

    def head_prod(f):
        num = f.raw()[0]
        for i in reversed(head):
            num = _Y_raw(i, n, num)
        return f.with_numerators(num).scale(_tpow(r * n))

    def coset_expansion(f):
        out = Poly.zero(n)
        for sigma in reps:
            g = _apply_word(_T_sigma(sigma, inverse=True), f)
            g = _apply_word(_T_sigma(sigma), head_prod(g))
            out = out + g.scale(_tpow(-perm_length(sigma)))
        return out

    report.results.append(_extensional("coset expansion of tail e_r", tail_e, coset_expansion, inputs))

    blocks = []
    for j in range(1, r + 1):
        blocks += [("T", i) for i in range(k + j - 1, j - 1, -1)]
    inv_blocks = []
    for j in range(r):
        inv_blocks += [("Ti", i) for i in range(n - r + j, k + j, -1)]
    pref = sum(n - k - j for j in range(r))
    pis = [("pi", None)] * r

    report.results.append(_extensional(
        "consecutive Y product as pi word", head_prod,
        lambda f: _apply_word(blocks + pis + inv_blocks, f).scale(_tpow(pref)), inputs))

    lhs_scalar = coset_scalar_sum(n, k, r)
    rhs_scalar = gauss_binomial(n, k, r)
    report.results.append(CheckResult(
        "coset t-series equals t-binomial", "exact",
        "pass" if lhs_scalar == rhs_scalar else "fail",
        None if lhs_scalar == rhs_scalar else {"sum": str(lhs_scalar), "binomial": str(rhs_scalar)},
        {"value": str(lhs_scalar)}))

    sandwich = _tpow(comb(r + 1, 2)) * rhs_scalar
    eps = [("eps", k)]
    report.results.append(_extensional(
        "tail e_r times eps_k sandwich",
        lambda f: tail_e(apply_eps(k, f)),
        lambda f: _apply_word(eps + blocks + pis + eps, f).scale(sandwich), inputs))

    xs = [("X", i) for i in range(1, k + 1)]
    inv_head = []
    for j in range(1, r + 1):
        inv_head += [("Ti", i) for i in range(k + j - 1, j - 1, -1)]
    xpref = _tpow(r * k) * sandwich
    report.results.append(_extensional(
        "X-product commutation",
        lambda f: tail_e(apply_eps(k, _apply_word(xs, f))),
        lambda f: _apply_word(xs + eps + inv_head + pis + eps, f).scale(xpref), inputs))
    return report


# ---------------------------------------------------------------------------
# normalized Delta_{p_m}


def delta_pm_normalized(m, n, f) -> Poly:
    """``(t^{-m} Psi_{p_m} f - f / (1 - t^m)) / (q^m - 1)`` at level ``n``."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    psi = apply_psi(SymSpec.p(m), n, f)
    inner = psi.scale(_tpow(-m)) - f.scale(ONE / (ONE - _tpow(m)))
    return inner.scale(ONE / (QQt.monomial(m, 0) - ONE))


def delta_pm_eigenvalue(m, nu):
    """``sum_i (q^{m nu_i} - 1)/(q^m - 1) t^{m(i-1)}`` over the parts of ``sort(nu)``."""
    from .combinat import sort_partition

    out = ZERO
    qm = QQt.monomial(m, 0) - ONE
    for i, part in enumerate(sort_partition(nu), start=1):
        out = out + (QQt.monomial(m * part, 0) - ONE) / qm * _tpow(m * (i - 1))
    return out


def delta_pm_level_eigenvalue(m, nu, n):
    """Level-``n`` scalar of ``Delta_{p_m}`` on ``E_nu``, from the alphabet ``{q^{sort(nu)_i} t^i}``."""
    from .combinat import pad, sort_partition

    lam = pad(sort_partition(nu), n)
    psum = ZERO
    for i, part in enumerate(lam, start=1):
        psum = psum + QQt.monomial(m * part, m * i)
    inner = psum * _tpow(-m) - ONE / (ONE - _tpow(m))
    return inner / (QQt.monomial(m, 0) - ONE)


# ---------------------------------------------------------------------------
# commutation relations


def pitilde_conjugate(F, n, f):
    """``F[Psi + (q^{-1} - 1) Yt_1] pitilde f`` with the plethystic part applied first.

    In the power-sum basis ``p_m[(q^{-1}-1) Yt_1] = (q^{-m} - 1) Yt_1^m``.
    """
    g0 = apply_pitilde(f)
    out = Poly.zero(n)
    if not isinstance(F, dict):
        F = _as_spec(F)
    for lam, c in as_power_sums(F).items():
        parts = list(lam)
        for mask in range(1 << len(parts)):
            g = g0
            coeff = _frac(c)
            psi_parts = []
            for j, part in enumerate(parts):
                if mask >> j & 1:
                    psi_parts.append(part)
                else:
                    coeff = coeff * (QQt.monomial(-part, 0) - ONE)
                    for _ in range(part):
                        g = apply_Ytilde(1, g)
            for part in psi_parts:
                g = apply_psi(SymSpec.p(part), n, g)
            out = out + g.scale(coeff)
    return out


def almost_sym_vectors(n, max_mu_len=2, max_degree=3):
    """``x^mu m_lambda`` with ``len(mu) <= 2`` and ``|mu| + |lambda| <= 3`` at level ``n``."""
    from .combinat import partitions, reduced_compositions
    from .stable import PhiIndex

    out = []
    for d in range(0, max_degree + 1):
        for a in range(0, d + 1):
            for mu in reduced_compositions(a, max_mu_len):
                for lam in partitions(d - a):
                    idx = PhiIndex(mu, lam)
                    if len(mu) + len(lam) <= n:
                        out.append((idx, idx.basis_element(n)))
    return out


def _exact_check(name, lhs, rhs, inputs, level):
    for label, f in inputs:
        a, b = lhs(f), rhs(f)
        if a != b:
            return CheckResult(name, f"exact@{level}", "fail",
                               {"input": str(label), "difference": (a - b).to_json()})
    return CheckResult(name, f"exact@{level}", "pass", detail={"checked": len(inputs)})


DEFAULT_FS = (SymSpec.e(1), SymSpec.e(2), SymSpec.p(2))


def commutation_suite(n_levels=range(3, 7), degree_bound=3, series_order=8, fs=DEFAULT_FS,
                      exact_level=None) -> SuiteReport:
    """Finite-level exact identities and limit relations between Delta, T_i, eps_k, Yt_i, pitilde.

    Exact tier (at ``exact_level``, default the top level): ``[Psi_F, T_i]``,
    ``[eps_k, Psi_F]``, ``[Psi_{e_r}, Psi_{e_s}]``, the pitilde conjugation
    ``pitilde Psi_F = F[Psi + (q^{-1}-1) Yt_1] pitilde``, and
    ``Yt_i pitilde = pitilde Yt_{i-1}``. Limit tier: ``[Psi_F, Yt_i]`` on
    almost-symmetric test vectors must vanish with valuation at least
    ``series_order`` at the top level.
    """
    levels = list(n_levels)
    top = exact_level or levels[-1]
    report = SuiteReport("commutation")
    vecs = [(str(idx), v) for idx, v in almost_sym_vectors(top, 2, degree_bound)]
    for F in fs:
        for i in range(1, top):
            report.results.append(_exact_check(
                f"[Psi_{F}, T{i}] = 0",
                lambda f, F=F, i=i: apply_psi(F, top, apply_T(i, f)),
                lambda f, F=F, i=i: apply_T(i, apply_psi(F, top, f)), vecs, top))
        for k in range(0, 3):
            report.results.append(_exact_check(
                f"eps_{k} Psi_{F} = Psi_{F} eps_{k}",
                lambda f, F=F, k=k: apply_eps(k, apply_psi(F, top, f)),
                lambda f, F=F, k=k: apply_psi(F, top, apply_eps(k, f)), vecs, top))
        report.results.append(_exact_check(
            f"pitilde Psi_{F} = {F}[Psi + (1/q - 1) Yt1] pitilde",
            lambda f, F=F: apply_pitilde(apply_psi(F, top, f)),
            lambda f, F=F: pitilde_conjugate(F, top, f), vecs, top))
    report.results.append(_exact_check(
        "[Psi_e1, Psi_e2] = 0",
        lambda f: apply_psi(SymSpec.e(1), top, apply_psi(SymSpec.e(2), top, f)),
        lambda f: apply_psi(SymSpec.e(2), top, apply_psi(SymSpec.e(1), top, f)), vecs, top))
    for i in range(2, 4):
        report.results.append(_exact_check(
            f"Yt{i} pitilde = pitilde Yt{i - 1}",
            lambda f, i=i: apply_Ytilde(i, apply_pitilde(f)),
            lambda f, i=i: apply_pitilde(apply_Ytilde(i - 1, f)), vecs, top))
    # (pitilde Delta - Delta pitilde)/(1/q - 1) = Yt_1 pitilde, with Delta = Psi_{p_1}
    report.results.append(_exact_check(
        "(pitilde Delta - Delta pitilde) = (1/q - 1) Yt1 pitilde",
        lambda f: apply_pitilde(apply_psi(SymSpec.p(1), top, f))
        - apply_psi(SymSpec.p(1), top, apply_pitilde(f)),
        lambda f: apply_Ytilde(1, apply_pitilde(f)).scale(ONE / Q - ONE), vecs, top))

    for F in fs:
        for i in range(1, 3):
            for d in range(0, degree_bound + 1):
                for a in range(0, d + 1):
                    for idx_vec in _vector_family(a, d - a):
                        name = f"[Psi_{F}, Yt{i}] on {idx_vec}"

                        def fam(n, F=F, i=i, idx_vec=idx_vec):
                            v = idx_vec.basis_element(n)
                            return (apply_psi(F, n, apply_Ytilde(i, v))
                                    - apply_Ytilde(i, apply_psi(F, n, v)))

                        usable = [n for n in levels if n >= idx_vec.length]
                        rep = check_vanishing(fam, usable)
                        ok = rep.passes(series_order)
                        report.results.append(CheckResult(
                            name, f"limit@{usable[-1]}", "pass" if ok else "fail",
                            None if ok else {"input": str(idx_vec), "valuations": rep.to_json()},
                            {"verdict": rep.verdict, "top_valuation": _v(rep.top_valuation)}))
    return report


def _v(x):
    return "inf" if x == INFINITY else x


def _vector_family(a, b):
    from .combinat import partitions, reduced_compositions
    from .stable import PhiIndex

    return [PhiIndex(mu, lam) for mu in reduced_compositions(a, 2) for lam in partitions(b)]


# ---------------------------------------------------------------------------
# the commutator scalar for normalized Delta_{p_m}


@dataclass
class CommutatorScalar:
    m: int
    scalar: QQt
    evidence: object
    ok: bool

    def to_json(self):
        return {"m": self.m, "c": str(self.scalar), "ok": self.ok, "evidence": self.evidence.to_json()}


def _commutator(m, n, f):
    lhs = delta_pm_normalized(m, n, apply_pitilde(f)) - apply_pitilde(delta_pm_normalized(m, n, f))
    rhs = apply_pitilde(f)
    for _ in range(m):
        rhs = apply_Ytilde(1, rhs)
    return lhs, rhs


def _ratio(lhs, rhs):
    """Common scalar ``c`` with ``lhs = c * rhs`` read off the leading term of ``rhs``."""
    exps, c = next(iter(rhs.terms.items()))
    return lhs.coeff(exps) / c


def commutator_scalar(m, levels=range(3, 7), probe=None) -> CommutatorScalar:
    """Compute ``c(m)`` in ``[Delta_{p_m}, pitilde] = c(m) Yt_1^m pitilde`` and test it on a family.

    ``c`` is read from the top level as a ratio of leading coefficients on the
    probe vector (default ``x_1``); the family ``LHS - c * RHS`` over the levels
    must then vanish.
    """
    levels = list(levels)
    probe = probe or (lambda n: Poly.var(1, n))
    lhs, rhs = _commutator(m, levels[-1], probe(levels[-1]))
    c = _ratio(lhs, rhs)

    def fam(n):
        a, b = _commutator(m, n, probe(n))
        return a - b.scale(c)

    rep = check_vanishing(fam, levels)
    return CommutatorScalar(m, c, rep, rep.verdict in (STABILIZED, CAUCHY))


def expected_commutator_scalar(m):
    """What the normalization gives when the bookkeeping is done exactly: ``(q t)^{-m}``."""
    return QQt.monomial(-m, -m)


def delta_pm_unit_family(m, levels):
    """Convergence report for ``Delta_{p_m}^{(n)}(1)`` (expected limit 0)."""
    return check_vanishing(lambda n: delta_pm_normalized(m, n, Poly.one(n)), levels)


def delta_pm_eigen_family(m, nu, levels, order):
    """Scalar family of level eigenvalues, its convergence report and the target series."""
    rep = check_convergence(lambda n: delta_pm_level_eigenvalue(m, nu, n), 0, levels, order,
                            expand=False)
    target = t_series(delta_pm_eigenvalue(m, nu), order)
    return rep, target
