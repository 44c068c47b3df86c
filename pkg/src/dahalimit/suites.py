"""Named verification suites shared by the ``verify`` command and the tests.

Every suite takes keyword parameters (unknown ones are ignored) and returns a
``SuiteReport`` whose entries follow the ``{relation, level_or_exact, status,
witness}`` report schema.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .combinat import compositions, pad, sort_partition
from .delta import (
    CheckResult, SuiteReport, _as_spec, commutation_suite, commutator_scalar, delta_pm_eigen_family,
    delta_pm_unit_family, expected_commutator_scalar, finite_n_restriction_identity,
    lemma_identity_suite, restricted_delta, restriction_test_vectors,
)
from .hecke import apply_Ytilde, check_daha_relations
from .macdonald import compute_E, psi_scalar, spectrum_matches, verify_psi_eigen
from .polyring import Poly, kappa_eval
from .scalars import INFINITY, ONE, QQt, t_series
from .stable import (
    CAUCHY, STABILIZED, PhiIndex, check_convergence, check_vanishing, tilde_E_level,
    weight_formula,
)


def _v(x):
    return "inf" if x == INFINITY else x


def _status(ok):
    return "pass" if ok else "fail"


def _spec(F):
    return _as_spec(F)


def all_compositions(max_size, max_n):
    """Compositions ``nu`` with ``|nu| <= max_size`` and ``len(nu) = n <= max_n``."""
    out = []
    for n in range(1, max_n + 1):
        for d in range(0, max_size + 1):
            out.extend(compositions(d, n))
    return out


# ---------------------------------------------------------------------------
# suites


def suite_relations(n=3, degree=3, **_):
    rep = check_daha_relations(n, degree)
    out = SuiteReport(f"relations n={n} degree={degree}")
    for r in rep.results:
        out.results.append(CheckResult(r.name, "exact", _status(r.ok), r.witness,
                                       {"checked": r.checked}))
    return out


def suite_spectra(max_size=4, max_n=4, **_):
    out = SuiteReport("spectra")
    for nu in all_compositions(max_size, max_n):
        try:
            ok = spectrum_matches(nu)
            witness = None if ok else {"spectrum": [str(y) for y in compute_E(nu).spectrum]}
        except Exception as exc:  # solver failures are reported, not raised
            ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        out.results.append(CheckResult(f"spectrum of E_{nu}", f"exact@{len(nu)}",
                                       _status(ok), witness))
    return out


def suite_psi_eigen(max_size=4, max_n=4, fs=("e1", "e2", "p1", "p2"), **_):
    out = SuiteReport("psi-eigen")
    for F in map(_spec, fs):
        for nu in all_compositions(max_size, max_n):
            ok = verify_psi_eigen(F, nu)
            witness = None if ok else {"expected": str(psi_scalar(F, nu))}
            out.results.append(CheckResult(f"Psi_{F} E_{nu} = {F}[alphabet] E_{nu}",
                                           f"exact@{len(nu)}", _status(ok), witness))
    return out


LEMMA_CASES = ((4, 1, 1), (5, 1, 2), (5, 2, 1), (6, 2, 2))


def suite_lemmas(n=None, k=None, r=None, degree=3, **_):
    cases = LEMMA_CASES if n is None else ((n, k if k is not None else 1, r if r is not None else 1),)
    out = SuiteReport("lemmas")
    for nn, kk, rr in cases:
        rep = lemma_identity_suite(nn, kk, rr, degree)
        for res in rep.results:
            res.relation = f"{res.relation} (n={nn}, k={kk}, r={rr})"
            out.results.append(res)
    return out


def suite_restriction(n=None, k=None, r=None, max_n=6, **_):
    """Exact finite-level restriction identity on the standard test vectors."""
    out = SuiteReport("restriction")
    ks = range(0, 3) if k is None else (k,)
    rs = range(1, 3) if r is None else (r,)
    for kk, rr in product(ks, rs):
        ns = range(kk + rr + 1, max_n + 1) if n is None else (n,)
        for nn in ns:
            for name, f in restriction_test_vectors(kk, nn):
                ok = finite_n_restriction_identity(kk, rr, nn, f)
                out.results.append(CheckResult(
                    f"e{rr}[Delta] restricted, k={kk}, on x1..x{kk}*{name}", f"exact@{nn}",
                    _status(ok), None if ok else {"input": str(f)}))
    return out


def _expected_word(k, s):
    word = ["eps_%d" % k]
    for j in range(1, s + 1):
        word.extend(f"T{i}" for i in range(k + j - 1, j - 1, -1))
    if s:
        word.append("pi" if s == 1 else f"pi^{s}")
    return "*".join(word)


def suite_delta_formula(k=3, r=2, **_):
    """Structure of the restricted ``e_r[Delta]`` formula: scalars and words per term."""
    formula = restricted_delta(k, r)
    out = SuiteReport("delta-formula")
    for term in formula.terms:
        scalar = ONE
        for i in range(1, term.s + 1):
            ti = QQt.monomial(0, i)
            scalar = scalar * ti / (ONE - ti)
        ok = term.scalar == scalar
        if term.s:
            ok = ok and term.text().endswith(_expected_word(k, term.s))
        out.results.append(CheckResult(f"e{r}[Delta] on P({k}) term s={term.s}", "exact",
                                       _status(ok), None if ok else {"text": term.text()},
                                       {"text": term.text()}))
    return out


def suite_psi_limit(F="p2", nu=(5, 4, 4, 2, 2, 2, 1, 1), levels=None, order=12, **_):
    """Level eigenvalues ``F[{q^{nu_i} t^i}_{i<=n}]`` converge to ``F[kappa_nu]``."""
    F = _spec(F)
    nu = sort_partition(nu)
    levels = list(levels or range(len(nu), len(nu) + 4))
    rep = check_convergence(lambda n: psi_scalar(F, pad(nu, n), n), 0, levels, order, expand=False)
    target = t_series(kappa_eval(F, nu), order)
    lim = rep.limit().get("scalar")
    ok = rep.verdict in (STABILIZED, CAUCHY) and lim is not None and lim.agrees_with(target, lim.order)
    out = SuiteReport("psi-limit")
    out.results.append(CheckResult(
        f"{F}[alphabet of {nu}] -> {F}[kappa]", f"limit@{levels[-1]}", _status(ok),
        None if ok else rep.to_json(),
        {"verdict": rep.verdict, "agrees_to": lim.order if lim is not None else None,
         "kappa_series": str(target)}))
    return out


def suite_weight_example(levels=None, **_):
    levels = list(levels or range(2, 6))
    out = SuiteReport("weight-example")
    qt = QQt.monomial(1, 1)
    for n in levels:
        x1 = Poly.var(1, n)
        ok = apply_Ytilde(1, x1) == x1.scale(qt)
        out.results.append(CheckResult("Yt1(x1) = q*t*x1", f"exact@{n}", _status(ok)))
    ok = weight_formula(PhiIndex((1,), ()), 1) == qt
    out.results.append(CheckResult("weight((1|),1) = q*t", "exact", _status(ok)))
    return out


STABLE_INDICES = (
    PhiIndex((1,), ()), PhiIndex((), (1,)), PhiIndex((2,), ()),
    PhiIndex((1,), (1,)), PhiIndex((1, 1), ()),
)


def _tilde_levels(idx, levels, i=1):
    return [n for n in levels if n >= max(idx.length + 1, i)]


def tilde_E_report(idx, levels, order=12):
    usable = _tilde_levels(idx, levels)
    return check_convergence(lambda n: tilde_E_level(idx, n), len(idx.mu), usable, order)


def weight_family_report(idx, i, levels):
    """Vanishing evidence for ``Yt_i E~ - weight * E~`` across levels."""
    w = weight_formula(idx, i)

    def fam(n):
        E = tilde_E_level(idx, n)
        return apply_Ytilde(i, E) - E.scale(w)

    return check_vanishing(fam, _tilde_levels(idx, levels, i))


def suite_stable_limit(levels=None, order=12, threshold=4, indices=STABLE_INDICES, **_):
    levels = list(levels or range(2, 7))
    out = SuiteReport("stable-limit")
    for idx in indices:
        rep = tilde_E_report(idx, levels, order)
        ok = rep.verdict in (STABILIZED, CAUCHY) and rep.final_valuation >= threshold
        out.results.append(CheckResult(
            f"E~{idx} converges", f"limit@{rep.levels[-1]}", _status(ok),
            None if ok else rep.to_json(),
            {"verdict": rep.verdict, "final_valuation": _v(rep.final_valuation),
             "skipped_levels": [n for n in levels if n not in rep.levels]}))
        for i in range(1, 4):
            wrep = weight_family_report(idx, i, levels)
            ok = wrep.passes(threshold)
            out.results.append(CheckResult(
                f"Yt{i} E~{idx} = weight * E~{idx}", f"limit@{wrep.levels[-1]}", _status(ok),
                None if ok else wrep.to_json(),
                {"verdict": wrep.verdict, "top_valuation": _v(wrep.top_valuation),
                 "weight": str(weight_formula(idx, i))}))
    return out


def suite_commutation(levels=None, degree=3, order=8, **_):
    levels = list(levels or range(3, 7))
    return commutation_suite(levels, degree, order)


EXAMPLE_DELTA_INDEX = PhiIndex((4, 1, 2), (5, 4, 2, 2, 1))


def suite_delta_pm(m=None, levels=None, order=10, threshold=4, nu=None, **_):
    """``Delta_{p_m}(1) -> 0`` and the eigenvalue family against its closed form."""
    ms = (1, 2) if m is None else (m,)
    nu = tuple(nu) if nu else EXAMPLE_DELTA_INDEX.composition()
    unit_levels = list(levels or range(2, 7))
    out = SuiteReport("delta-pm")
    for mm in ms:
        rep = delta_pm_unit_family(mm, unit_levels)
        ok = rep.passes(threshold)
        out.results.append(CheckResult(
            f"Delta_p{mm}(1) -> 0", f"limit@{unit_levels[-1]}", _status(ok),
            None if ok else rep.to_json(),
            {"verdict": rep.verdict, "valuations": [_v(v) for v in rep.valuations]}))
        eig_levels = list(range(len(nu) + 1, len(nu) + 5))
        erep, target = delta_pm_eigen_family(mm, nu, eig_levels, order)
        lim = erep.limit().get("scalar")
        ok = (erep.verdict in (STABILIZED, CAUCHY) and lim is not None
              and lim.order >= order and lim.agrees_with(target, order))
        out.results.append(CheckResult(
            f"Delta_p{mm} eigenvalue on E~{nu}", f"limit@{eig_levels[-1]}", _status(ok),
            None if ok else erep.to_json(),
            {"verdict": erep.verdict, "target": str(target),
             "agrees_to": lim.order if lim is not None else None}))
    return out


def suite_commutator_scalar(m=None, levels=None, **_):
    ms = (1, 2) if m is None else (m,)
    levels = list(levels or range(3, 7))
    out = SuiteReport("commutator-scalar")
    for mm in ms:
        cs = commutator_scalar(mm, levels)
        out.results.append(CheckResult(
            f"[Delta_p{mm}, pit] - c*Yt1^{mm}*pit -> 0", f"limit@{levels[-1]}",
            _status(cs.ok), None if cs.ok else cs.evidence.to_json(),
            {"c": str(cs.scalar), "closed_form": str(expected_commutator_scalar(mm)),
             "valuations": [_v(v) for v in cs.evidence.valuations]}))
    return out


@dataclass(frozen=True)
class Suite:
    name: str
    run: object
    summary: str
    params: tuple = ()


SUITES = {s.name: s for s in (
    Suite("relations", suite_relations, "defining relations on monomials", ("n", "degree")),
    Suite("spectra", suite_spectra, "E_nu spectra against {q^sort(nu)_i t^i}",
          ("max_size", "max_n")),
    Suite("psi-eigen", suite_psi_eigen, "Psi_F E_nu = F[alphabet] E_nu", ("max_size", "max_n")),
    Suite("lemmas", suite_lemmas, "finite-level lemma identities", ("n", "k", "r", "degree")),
    Suite("restriction", suite_restriction, "exact finite-level e_r[Delta] restriction",
          ("n", "k", "r")),
    Suite("delta-formula", suite_delta_formula, "structure of the restricted e_r[Delta] formula",
          ("k", "r")),
    Suite("psi-limit", suite_psi_limit, "level eigenvalues converge to F[kappa_nu]",
          ("F", "nu", "levels", "order")),
    Suite("weight-example", suite_weight_example, "Yt1(x1) = q*t*x1", ("levels",)),
    Suite("stable-limit", suite_stable_limit, "E~ families and their Yt weights",
          ("levels", "order")),
    Suite("commutation", suite_commutation, "Delta commutation relations, exact and limit",
          ("levels", "degree", "order")),
    Suite("delta-pm", suite_delta_pm, "normalized Delta_{p_m}: unit and eigenvalue families",
          ("m", "levels", "order")),
    Suite("commutator-scalar", suite_commutator_scalar, "c(m) in [Delta_p_m, pit]",
          ("m", "levels")),
)}


def run_suite(name, **params):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    return SUITES[name].run(**params)
