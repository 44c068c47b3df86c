"""Non-symmetric Macdonald polynomials by a triangular solve on the Bruhat down-set."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .combinat import beta_index, bruhat_downset, pad, sort_partition
from .hecke import _Y_image, apply_Y
from .polyring import Poly
from .scalars import ZERO, QQt


class ClosureError(RuntimeError):
    """A Cherednik operator left the span of the Bruhat down-set."""


class SingularSystemError(RuntimeError):
    """The joint eigenspace at the leading monomial is not one-dimensional."""


@dataclass
class MacdonaldE:
    mu: tuple
    poly: Poly
    spectrum: list = field(default_factory=list)

    @property
    def n(self):
        return len(self.mu)

    def to_json(self):
        out = self.poly.to_json()
        out["mu"] = list(self.mu)
        out["spectrum"] = [str(y) for y in self.spectrum]
        return out


def _y_matrices(basis, n):
    """Column maps ``M[i][col] = {row: raw coeff}`` for each Y_i on the basis span."""
    index = set(basis)
    mats = []
    for i in range(1, n + 1):
        cols = {}
        for b in basis:
            img = _Y_image(i, n, b)
            for m in img:
                if m not in index:
                    raise ClosureError(f"Y{i} maps x^{b} outside the down-set (hits x^{m})")
            cols[b] = img
        mats.append(cols)
    return mats


def _entry(cols, row, col):
    c = cols[col].get(row)
    return QQt.from_raw(c) if c else ZERO


def _solve_triangular(basis, mats, ys):
    mu = basis[-1]
    v = {mu: QQt(1)}
    done = {mu}
    for gamma in reversed(basis[:-1]):
        for cols, y in zip(mats, ys):
            diag = _entry(cols, gamma, gamma)
            if diag != y:
                break
        else:
            raise SingularSystemError(f"no operator separates x^{gamma} from the leading term")
        rhs = ZERO
        for delta in basis:
            if delta == gamma:
                continue
            c = cols[delta].get(gamma)
            if not c:
                continue
            if delta not in done:
                return None  # not triangular in this ordering
            if v[delta]:
                rhs = rhs + QQt.from_raw(c) * v[delta]
        v[gamma] = rhs / (y - diag) if rhs else ZERO
        done.add(gamma)
    return v


def _solve_gauss(basis, mats, ys):
    """Joint kernel of the stacked ``(M_i - y_i)`` with ``v[mu] = 1`` by elimination."""
    mu = basis[-1]
    unknowns = basis[:-1]
    col_of = {g: j for j, g in enumerate(unknowns)}
    rows = []
    for cols, y in zip(mats, ys):
        for r in basis:
            row = [ZERO] * (len(unknowns) + 1)
            for c in basis:
                e = _entry(cols, r, c)
                if c == r:
                    e = e - y
                if not e:
                    continue
                if c == mu:
                    row[-1] = row[-1] - e
                else:
                    row[col_of[c]] = e
            if any(row):
                rows.append(row)
    pivots = []
    rank_row = 0
    for j in range(len(unknowns)):
        piv = next((r for r in range(rank_row, len(rows)) if rows[r][j]), None)
        if piv is None:
            raise SingularSystemError("joint eigenspace has dimension greater than one")
        rows[rank_row], rows[piv] = rows[piv], rows[rank_row]
        p = rows[rank_row]
        inv = p[j].inverse()
        p[:] = [x * inv for x in p]
        for r in range(len(rows)):
            if r != rank_row and rows[r][j]:
                f = rows[r][j]
                rows[r] = [a - f * b for a, b in zip(rows[r], p)]
        pivots.append(j)
        rank_row += 1
    for r in rows[rank_row:]:
        if r[-1]:
            raise SingularSystemError("inconsistent eigen-system")
    v = {mu: QQt(1)}
    for r, j in enumerate(pivots):
        v[unknowns[j]] = rows[r][-1]
    return v


@lru_cache(maxsize=None)
def _compute_E(mu, n):
    basis = bruhat_downset(mu, n)
    mats = _y_matrices(basis, n)
    ys = [_entry(cols, mu, mu) for cols in mats]
    v = _solve_triangular(basis, mats, ys)
    if v is None:
        v = _solve_gauss(basis, mats, ys)
    poly = Poly(n, {g: c for g, c in v.items() if c})
    for i, y in enumerate(ys, start=1):
        if apply_Y(i, poly) != poly.scale(y):
            raise SingularSystemError(f"solution is not a Y{i} eigenvector")
    return MacdonaldE(mu, poly, ys)


def compute_E(mu, n=None) -> MacdonaldE:
    """The non-symmetric Macdonald polynomial ``E_mu`` in ``n`` variables.

    ``mu`` is zero-padded to length ``n``. The result is monic in ``x^mu`` and
    its spectrum lists the eigenvalue of each ``Y_i``; both are re-verified by
    direct operator application before returning.
    """
    mu = tuple(int(p) for p in mu)
    if n is None:
        n = len(mu)
    if n < 1:
        raise ValueError("need at least one variable")
    if any(p < 0 for p in mu):
        raise ValueError(f"negative entry in {mu}")
    return _compute_E(pad(mu, n), n)


def expected_tn_spectrum(mu, n):
    lam = pad(sort_partition(mu), n)
    return [QQt.monomial(lam[i - 1], i) for i in range(1, n + 1)]


def tn_spectrum_multiset(mu, n=None):
    """``t^n`` times each Y-eigenvalue of ``E_mu``, as a Counter of scalars."""
    E = compute_E(mu, n)
    tn = QQt.monomial(0, E.n)
    return Counter(tn * y for y in E.spectrum)


def spectrum_matches(mu, n=None):
    E = compute_E(mu, n)
    return tn_spectrum_multiset(mu, n) == Counter(expected_tn_spectrum(E.mu, E.n))


def closed_form_eigenvalue(mu, i):
    """``q^{mu_i} t^{1 - beta_mu(i)}``, the eigenvalue of ``Y_i`` on ``E_mu``."""
    return QQt.monomial(mu[i - 1], 1 - beta_index(mu, i))


def psi_scalar(F, mu, n=None):
    """``F`` evaluated on the alphabet ``{q^{sort(mu)_i} t^i}``."""
    from .symfun import evaluate_on_alphabet

    if n is None:
        n = len(mu)
    return evaluate_on_alphabet(F, expected_tn_spectrum(pad(mu, n), n))


def verify_psi_eigen(F, mu, n=None):
    from .delta import apply_psi

    E = compute_E(mu, n)
    lhs = apply_psi(F, E.n, E.poly)
    return lhs == E.poly.scale(psi_scalar(F, E.mu, E.n))
