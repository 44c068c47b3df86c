"""Stable-limit Macdonald functions, almost-symmetric expansions and convergence checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernel as K
from .combinat import beta_index, distinct_permutations, pad, reduce_composition, sort_partition
from .hecke import apply_eps
from .macdonald import compute_E
from .polyring import Poly
from .scalars import INFINITY, QQt, TSeries, ZERO, t_series, t_valuation

STABILIZED = "stabilized-exact"
CAUCHY = "cauchy-increasing"
DIVERGED = "diverged"


class SymmetryError(ValueError):
    """The polynomial is not symmetric in the trailing variables."""


class BelowThresholdError(ValueError):
    """Too few variables for the almost-symmetric basis to be independent."""


@dataclass(frozen=True, order=True)
class PhiIndex:
    """A pair ``(mu|lambda)``: a reduced composition and a partition."""

    mu: tuple = ()
    lam: tuple = ()

    def __post_init__(self):
        mu = tuple(int(p) for p in self.mu)
        lam = tuple(int(p) for p in self.lam)
        if any(p < 0 for p in mu) or (mu and mu[-1] == 0):
            raise ValueError(f"mu must be a reduced composition, got {mu}")
        if any(p <= 0 for p in lam) or list(lam) != sorted(lam, reverse=True):
            raise ValueError(f"lambda must be a partition, got {lam}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "lam", lam)

    @property
    def size(self):
        return sum(self.mu) + sum(self.lam)

    @property
    def length(self):
        return len(self.mu) + len(self.lam)

    def composition(self):
        return self.mu + self.lam

    def basis_element(self, n):
        """``x^mu m_lambda(x_1..x_n)``."""
        mu = pad(self.mu, n)
        num = {}
        for p in distinct_permutations(pad(self.lam, n)):
            num[tuple(a + b for a, b in zip(mu, p))] = {0: 1}
        return Poly._make(n, num)

    def __str__(self):
        return f"({','.join(map(str, self.mu))}|{','.join(map(str, self.lam))})"

    def to_json(self):
        return {"mu": list(self.mu), "lambda": list(self.lam)}

    @classmethod
    def parse(cls, text):
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")") and "|" in body):
            raise ValueError(f"expected '(mu|lambda)', got {text!r}")
        left, right = body[1:-1].split("|", 1)
        conv = lambda s: tuple(int(p) for p in s.split(",") if p.strip())  # noqa: E731
        return cls(conv(left), conv(right))


def _coeff_json(c):
    return str(c)


@dataclass
class AlmostSymExpansion:
    k: int
    coeffs: dict
    level: int

    def is_exact(self):
        return all(isinstance(c, QQt) for c in self.coeffs.values())

    def resum(self, n=None):
        n = self.level if n is None else n
        if not self.is_exact():
            raise ValueError("cannot resum series coefficients")
        out = Poly.zero(n)
        for idx, c in self.coeffs.items():
            out = out + idx.basis_element(n).scale(c)
        return out

    def min_valuation(self):
        vals = [c.valuation() if isinstance(c, TSeries) else t_valuation(c)
                for c in self.coeffs.values()]
        return min(vals, default=INFINITY)

    def to_json(self):
        return {
            "k": self.k,
            "level": self.level,
            "terms": [
                dict(idx.to_json(), coeff=_coeff_json(c)) for idx, c in sorted(self.coeffs.items())
            ],
        }


def _marker_index(a, k):
    return PhiIndex(reduce_composition(a[:k]), sort_partition(a[k:]))


def almost_sym_expand(f: Poly, k: int) -> AlmostSymExpansion:
    """Coefficients of ``f`` in the basis ``x^mu m_lambda`` with ``len(mu) <= k``.

    Peels the residual one basis element at a time, always taking a monomial
    of least total degree in ``x_1..x_k`` (ties broken lex-largest) as marker.
    """
    n = f.nvars
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range for {n} variables")
    if n - k >= 2 and not f.is_symmetric_in(k + 1, n):
        raise SymmetryError(f"not symmetric in x{k + 1}..x{n}")
    num, den = f.raw()
    deg = f.degree() if num else 0
    if n < deg + k:
        raise BelowThresholdError(f"need n >= deg + k = {deg + k}, have n = {n}")
    res = {m: dict(c) for m, c in num.items()}
    coeffs = {}
    while res:
        a = min(res, key=lambda m: (sum(m[:k]), tuple(-e for e in m)))
        c = dict(res[a])
        idx = _marker_index(a, k)
        if idx in coeffs:
            raise BelowThresholdError(f"marker {idx} reused; basis not independent at n={n}")
        coeffs[idx] = QQt.from_raw(c, den)
        K.xaccum(res, {0: -1}, {m: c for m in idx.basis_element(n).raw()[0]})
    return AlmostSymExpansion(k, coeffs, n)


def tilde_E_level(idx, n) -> Poly:
    """The level-``n`` term ``eps_{len(mu)}(E_{mu*lambda*0...})`` of the stable limit."""
    if not isinstance(idx, PhiIndex):
        idx = PhiIndex(*idx)
    if n < idx.length + 1:
        raise ValueError(f"level {n} too small for {idx}; need at least {idx.length + 1}")
    E = compute_E(pad(idx.composition(), n), n)
    return apply_eps(len(idx.mu), E.poly)


def weight_formula(idx, i) -> QQt:
    """``q^{mu_i} t^{len(mu)+len(lambda)+1-beta_{mu*lambda}(i)}`` for ``mu_i > 0``, else 0."""
    if not isinstance(idx, PhiIndex):
        idx = PhiIndex(*idx)
    if i < 1:
        raise ValueError("index must be positive")
    if i > len(idx.mu) or idx.mu[i - 1] == 0:
        return ZERO
    nu = idx.composition()
    return QQt.monomial(idx.mu[i - 1], idx.length + 1 - beta_index(nu, i))


# ---------------------------------------------------------------------------
# convergence


@dataclass
class KeyTrack:
    key: object
    levels: list = field(default_factory=list)
    coeffs: list = field(default_factory=list)
    diff_valuations: list = field(default_factory=list)
    verdict: str = DIVERGED
    limit: TSeries | None = None

    def to_json(self):
        rows = []
        for j, (lvl, c) in enumerate(zip(self.levels, self.coeffs)):
            v = self.diff_valuations[j - 1] if j else None
            rows.append({
                "level": lvl,
                "coeff": str(c),
                "diff_valuation": _val_json(v),
            })
        return {"key": str(self.key), "verdict": self.verdict, "levels": rows,
                "limit": str(self.limit) if self.limit is not None else None}


def _val_json(v):
    if v is None:
        return None
    return "inf" if v == INFINITY else v


@dataclass
class LimitReport:
    verdict: str
    tracks: dict
    levels: list
    skipped: list = field(default_factory=list)
    series_order: int = 12
    note: str = ""

    @property
    def final_valuation(self):
        """Least valuation among the last successive differences (inf when exact)."""
        vals = [t.diff_valuations[-1] for t in self.tracks.values() if t.diff_valuations]
        return min(vals, default=INFINITY)

    @property
    def top_valuation(self):
        """Least coefficient valuation at the top level (for families that should vanish)."""
        vals = [t_valuation(t.coeffs[-1]) for t in self.tracks.values() if t.coeffs]
        return min(vals, default=INFINITY)

    def limit(self):
        return {k: t.limit for k, t in self.tracks.items()}

    def limit_is_zero(self, order=None):
        order = self.series_order if order is None else order
        for t in self.tracks.values():
            if t.limit is None or t.limit.order < order:
                return False
            if any(e <= order for e in t.limit.coeffs):
                return False
        return True

    def to_json(self):
        return {
            "verdict": self.verdict,
            "levels": self.levels,
            "skipped_levels": self.skipped,
            "series_order": self.series_order,
            "final_valuation": _val_json(self.final_valuation),
            "top_valuation": _val_json(self.top_valuation),
            "keys": [t.to_json() for _, t in sorted(self.tracks.items(), key=lambda kv: str(kv[0]))],
            "note": self.note,
        }


def classify(valuations, npoints):
    """Verdict for one key from the valuations of its successive differences."""
    if npoints < 2:
        return DIVERGED
    if all(v == INFINITY for v in valuations):
        return STABILIZED
    if npoints < 3:
        return DIVERGED
    seen_inf = False
    prev = None
    for v in valuations:
        if v == INFINITY:
            seen_inf = True
            continue
        if seen_inf or (prev is not None and v <= prev):
            return DIVERGED
        prev = v
    return CAUCHY


def _limit_series(track, verdict, order):
    top = track.coeffs[-1]
    if verdict == STABILIZED:
        return t_series(top, order)
    finite = [v for v in track.diff_valuations if v != INFINITY]
    if verdict == CAUCHY:
        return t_series(top, min(order, finite[-1] - 1))
    return None


def check_convergence(family, k, levels, series_order=12, expand=True) -> LimitReport:
    """Sample ``family(n)`` on ``levels`` and classify coefficient convergence.

    ``family`` returns a ``Poly`` (expanded in the ``x^mu m_lambda`` basis
    with ``k`` free variables) or, with ``expand=False``, a ``QQt`` scalar.
    Levels below the expansion threshold ``n >= deg + k`` are skipped and
    listed in the report. A key absent at some level counts as coefficient 0.
    """
    levels = list(levels)
    samples = []
    skipped = []
    for n in levels:
        value = family(n)
        if expand:
            deg = value.degree() if not value.is_zero() else 0
            if n < deg + k:
                skipped.append(n)
                continue
            samples.append((n, almost_sym_expand(value, k).coeffs))
        else:
            samples.append((n, {"scalar": value} if value else {}))
    keys = set()
    for _, coeffs in samples:
        keys.update(coeffs)
    used = [n for n, _ in samples]
    tracks = {}
    for key in keys:
        tr = KeyTrack(key, used, [c.get(key, ZERO) for _, c in samples])
        tr.diff_valuations = [t_valuation(b - a) for a, b in zip(tr.coeffs, tr.coeffs[1:])]
        tr.verdict = classify(tr.diff_valuations, len(used))
        tr.limit = _limit_series(tr, tr.verdict, series_order)
        tracks[key] = tr
    verdicts = {t.verdict for t in tracks.values()}
    if not tracks:
        overall = STABILIZED if len(used) >= 2 else DIVERGED
    elif DIVERGED in verdicts:
        overall = DIVERGED
    elif CAUCHY in verdicts:
        overall = CAUCHY
    else:
        overall = STABILIZED
    note = ""
    if overall == DIVERGED:
        bad = [str(t.key) for t in tracks.values() if t.verdict == DIVERGED]
        note = "unstable keys: " + ", ".join(sorted(bad)) if bad else "too few usable levels"
    return LimitReport(overall, tracks, used, skipped, series_order, note)


@dataclass
class VanishingReport:
    """Evidence that a level family tends to 0 t-adically.

    The coordinates in the ``x^mu m_lambda`` basis are an integer
    unitriangular transform of the monomial coefficients, so both have the
    same least t-valuation; this lets every level count, not only those above
    the expansion threshold.
    """

    verdict: str
    levels: list
    valuations: list

    @property
    def top_valuation(self):
        return self.valuations[-1] if self.valuations else INFINITY

    def passes(self, threshold):
        return self.verdict in (STABILIZED, CAUCHY) and self.top_valuation >= threshold

    def to_json(self):
        return {
            "verdict": self.verdict,
            "levels": [
                {"level": n, "valuation": _val_json(v)} for n, v in zip(self.levels, self.valuations)
            ],
            "top_valuation": _val_json(self.top_valuation),
        }


def check_vanishing(family, levels) -> VanishingReport:
    """Classify a family expected to converge to 0 by the valuation of each level."""
    levels = list(levels)
    vals = [family(n).min_valuation() for n in levels]
    verdict = classify(vals, len(vals))
    return VanishingReport(verdict, levels, vals)
