"""Sparse polynomials in x_1..x_n with coefficients in Q(q, t).

A ``Poly`` is stored fraction-free: a map from exponent tuples to Laurent
polynomials in q, t with integer coefficients (the numerators) over a single
shared denominator. Operators with Laurent-polynomial structure constants act
on the numerators only, which avoids a gcd per coefficient per step. The
canonical per-term view is computed on demand.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from . import kernel as K
from .combinat import distinct_permutations, pad
from .kernel import pack
from .scalars import (
    ONE,
    QQt,
    ZERO,
    _as_qqt,
    _order_key,
    canonical_fraction,
    content,
    min_exponents,
    pcofactors,
    pdivexact,
    plcm_cofactors,
    qqt_text,
    raw_t_valuation,
)

_ONE_D = {0: 1}


def monomial_order_key(exps):
    """Graded, then lexicographic with x_1 heaviest."""
    return (sum(exps), exps)


def _normalize_den(num, den):
    """Move monomial and sign factors of ``den`` into ``num``; no gcd work."""
    if den == _ONE_D:
        return num, den
    a, b = min_exponents(den)
    if a or b:
        sh = pack(a, b)
        den = K.pshift(den, -sh)
        num = {m: K.pshift(c, -sh) for m, c in num.items()}
    if den[min(den, key=_order_key)] < 0:
        den = K.pneg(den)
        num = {m: K.pneg(c) for m, c in num.items()}
    return num, den


def _strip(c):
    a, b = min_exponents(c)
    return K.pshift(c, -pack(a, b)) if (a or b) else c


def reduce_fraction(num, den):
    """Cancel the common factor of all numerators against the denominator."""
    num, den = _normalize_den(num, den)
    if den == _ONE_D or not num:
        return (num, _ONE_D) if not num else (num, den)
    g = den
    for c in num.values():
        if len(g) == 1:
            break
        h, _, _ = pcofactors(g, _strip(c))
        g = _strip(h)
    if len(g) > 1:
        den = pdivexact(den, g)
        num = {m: pdivexact(c, g) for m, c in num.items()}
    ic = content(den)
    for c in num.values():
        if ic == 1:
            break
        ic = math.gcd(ic, content(c))
    if ic != 1:
        den = {k: v // ic for k, v in den.items()}
        num = {m: {k: v // ic for k, v in c.items()} for m, c in num.items()}
    return _normalize_den(num, den)


class Poly:
    """Polynomial in ``nvars`` variables over Q(q, t)."""

    __slots__ = ("nvars", "_num", "_den", "_terms")

    def __init__(self, nvars, terms=None):
        self.nvars = int(nvars)
        if self.nvars < 0:
            raise ValueError("nvars must be nonnegative")
        num = {}
        den = dict(_ONE_D)
        coeffs = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {self.nvars} variables")
            c = _as_qqt(c) if not isinstance(c, Fraction) else QQt(c.numerator, c.denominator)
            if c is NotImplemented:
                raise TypeError(f"unsupported coefficient {c!r}")
            coeffs[exps] = coeffs.get(exps, ZERO) + c
        for c in coeffs.values():
            if c:
                den, _, _ = plcm_cofactors(den, c._d)
        for exps, c in coeffs.items():
            if c:
                num[exps] = K.pmul(c._n, pdivexact(den, c._d))
        self._num, self._den = _normalize_den(num, den)
        self._terms = None

    @classmethod
    def _make(cls, nvars, num, den=None):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._num = num
        obj._den = _ONE_D if den is None else den
        obj._terms = None
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls._make(n, {})

    @classmethod
    def one(cls, n):
        return cls._make(n, {(0,) * n: {0: 1}})

    @classmethod
    def monomial(cls, exps, coeff=1):
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def var(cls, i, n):
        if not 1 <= i <= n:
            raise IndexError(f"variable x{i} out of range for {n} variables")
        e = [0] * n
        e[i - 1] = 1
        return cls._make(n, {tuple(e): {0: 1}})

    @classmethod
    def parse(cls, text, n):
        from .dsl import parse_poly

        return parse_poly(text, n)

    # raw access ---------------------------------------------------------

    def raw(self):
        return self._num, self._den

    def with_numerators(self, num):
        """Same denominator, new numerator map (used by operators)."""
        return Poly._make(self.nvars, num, self._den)

    # views --------------------------------------------------------------

    @property
    def terms(self):
        """Canonical ``{exponents: QQt}`` in canonical monomial order (leading first)."""
        if self._terms is None:
            den = self._den
            items = sorted(self._num.items(), key=lambda kv: monomial_order_key(kv[0]), reverse=True)
            out = {}
            for exps, c in items:
                if den == _ONE_D:
                    out[exps] = QQt.from_raw(c)
                else:
                    out[exps] = QQt._raw(*canonical_fraction(c, den))
            self._terms = out
        return self._terms

    def coeff(self, exps):
        c = self._num.get(tuple(exps))
        if c is None:
            return ZERO
        return QQt._raw(*canonical_fraction(c, self._den))

    def support(self):
        return set(self._num)

    def is_zero(self):
        return not self._num

    def __bool__(self):
        return bool(self._num)

    def __len__(self):
        return len(self._num)

    def degree(self):
        return max((sum(e) for e in self._num), default=-1)

    def homogeneous_component(self, d):
        return Poly._make(self.nvars, {m: dict(c) for m, c in self._num.items() if sum(m) == d}, self._den)

    def coeff_valuations(self):
        """t-adic valuation of every coefficient, computed without reduction."""
        return {m: raw_t_valuation(c, self._den) for m, c in self._num.items()}

    def min_valuation(self):
        vals = self.coeff_valuations().values()
        return min(vals, default=float("inf"))

    # arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError("expected a Poly")
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            c = _as_qqt(other)
            if c is NotImplemented:
                return NotImplemented
            other = Poly(self.nvars, {(0,) * self.nvars: c})
        self._check(other)
        if not other._num:
            return self
        if not self._num:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            num = K.xadd(self._num, other._num)
            return Poly._make(self.nvars, num, d1)
        den, m1, m2 = plcm_cofactors(d1, d2)
        num = K.xlincomb([(m1, self._num), (m2, other._num)])
        return Poly._make(self.nvars, *_normalize_den(num, den))

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.nvars, K.xscale(self._num, {0: -1}), self._den)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return self + (-_as_qqt(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        """Multiply by a scalar (``QQt`` or ``int``)."""
        c = _as_qqt(c)
        if not c._n or not self._num:
            return Poly.zero(self.nvars)
        n, d = c._n, c._d
        if d == _ONE_D:
            return Poly._make(self.nvars, K.xscale(self._num, n), self._den)
        num = K.xscale(self._num, n)
        den = K.pmul(self._den, d)
        return Poly._make(self.nvars, *reduce_fraction(num, den))

    def scale_raw(self, c):
        """Multiply by a Laurent polynomial coefficient dict."""
        return Poly._make(self.nvars, K.xscale(self._num, c), self._den)

    def divide_raw(self, d):
        """Divide by a nonzero polynomial coefficient dict, reducing afterwards."""
        return Poly._make(self.nvars, *reduce_fraction(self._num, K.pmul(self._den, d)))

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            out = {}
            for m1, c1 in self._num.items():
                for m2, c2 in other._num.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    acc = out.get(m)
                    if acc is None:
                        out[m] = K.pmul(c1, c2)
                    else:
                        K.iaddmul(acc, c1, c2)
                        if not acc:
                            del out[m]
            den = K.pmul(self._den, other._den)
            if den == _ONE_D:
                return Poly._make(self.nvars, out)
            return Poly._make(self.nvars, *reduce_fraction(out, den))
        c = _as_qqt(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = Poly.one(self.nvars)
        for _ in range(e):
            out = out * self
        return out

    def reduced(self):
        return Poly._make(self.nvars, *reduce_fraction(self._num, self._den))

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            c = _as_qqt(other)
            if c is NotImplemented:
                return NotImplemented
            other = Poly(self.nvars, {(0,) * self.nvars: c})
        if self.nvars != other.nvars or self._num.keys() != other._num.keys():
            return False
        d1, d2 = self._den, other._den
        if d1 == d2:
            return self._num == other._num
        for m, c in self._num.items():
            if K.pmul(c, d2) != K.pmul(other._num[m], d1):
                return False
        return True

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # structural ---------------------------------------------------------

    def swap(self, i):
        """The variable swap ``s_i`` exchanging ``x_i`` and ``x_{i+1}``."""
        if not 1 <= i < self.nvars:
            raise IndexError(f"s{i} out of range for {self.nvars} variables")
        out = {}
        for m, c in self._num.items():
            m2 = list(m)
            m2[i - 1], m2[i] = m2[i], m2[i - 1]
            out[tuple(m2)] = dict(c)
        return Poly._make(self.nvars, out, self._den)

    def is_symmetric_in(self, first, last):
        """True when invariant under permutations of ``x_first..x_last`` (1-indexed)."""
        num = self._num
        for i in range(first - 1, last - 1):
            for m, c in num.items():
                if m[i] != m[i + 1]:
                    m2 = m[:i] + (m[i + 1], m[i]) + m[i + 2:]
                    if num.get(m2) != c:
                        return False
        return True

    def restrict(self, m):
        """Set ``x_{m+1}, ..., x_n`` to zero and drop those variables."""
        if m > self.nvars:
            raise ValueError(f"cannot restrict {self.nvars} variables to {m}")
        out = {e[:m]: dict(c) for e, c in self._num.items() if not any(e[m:])}
        return Poly._make(m, out, self._den)

    def embed(self, n):
        """View as a polynomial in ``n >= nvars`` variables."""
        if n < self.nvars:
            raise ValueError("embed target must not be smaller")
        pad_ = (0,) * (n - self.nvars)
        return Poly._make(n, {e + pad_: dict(c) for e, c in self._num.items()}, self._den)

    # text and JSON ------------------------------------------------------

    def __str__(self):
        if not self._num:
            return "0"
        parts = []
        for exps, c in self.terms.items():
            parts.append(_term_text(exps, c))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self):
        return f"Poly({self.nvars}, {str(self)!r})"

    def to_json(self):
        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.terms.items()],
        }

    def dumps(self):
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["nvars"])
        terms = {}
        for item in data["terms"]:
            terms[tuple(item["exp"])] = QQt.parse(item["coeff"])
        return cls(n, terms)


def monomial_text(exps):
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def _term_text(exps, c):
    mono = monomial_text(exps)
    n, d = c._n, c._d
    if not mono:
        ctext = str(c)
        return f"({ctext})" if len(n) > 1 and d == _ONE_D else ctext
    if c == ONE:
        return mono
    if c == -ONE:
        return "-" + mono
    ctext = qqt_text(n, d)
    if len(n) > 1 and d == _ONE_D:
        ctext = f"({ctext})"
    return f"{ctext}*{mono}"


# ---------------------------------------------------------------------------
# symmetric polynomials in finitely many variables


def msym(lam, n):
    """Monomial symmetric polynomial ``m_lam(x_1..x_n)``."""
    lam = tuple(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than {n} parts")
    return Poly._make(n, {p: {0: 1} for p in distinct_permutations(pad(lam, n))})


def esym(r, n):
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r > n:
        return Poly.zero(n)
    return msym((1,) * r, n)


def psym(m, n):
    if m < 1:
        raise ValueError("m must be positive")
    out = {}
    for i in range(n):
        e = [0] * n
        e[i] = m
        out[tuple(e)] = {0: 1}
    return Poly._make(n, out)


def restrict(f, m):
    return f.restrict(m)


def p_lambda(lam, n):
    out = Poly.one(n)
    for part in lam:
        out = out * psym(part, n)
    return out


def kappa_power_sum(m, nu):
    """``p_m`` evaluated on the alphabet ``sum_i q^{nu_i} t^i`` (geometric tail included)."""
    nu = tuple(nu)
    ell = len(nu)
    head = {}
    for i, part in enumerate(nu, start=1):
        k = pack(m * part, m * i)
        head[k] = head.get(k, 0) + 1
    # head + t^{m(ell+1)} / (1 - t^m)
    den = {0: 1, pack(0, m): -1}
    num = K.padd(K.pmul(head, den), {pack(0, m * (ell + 1)): 1})
    return QQt.from_raw(num, den)


def kappa_eval(F, nu):
    """Evaluate ``F`` (a ``SymSpec`` or ``{partition: coefficient}`` in the p-basis) at ``kappa_nu``."""
    from .symfun import as_power_sums

    coeffs = as_power_sums(F)
    cache = {}
    total = ZERO
    for lam, c in coeffs.items():
        val = QQt(c.numerator, c.denominator) if isinstance(c, Fraction) else _as_qqt(c)
        for part in lam:
            if part not in cache:
                cache[part] = kappa_power_sum(part, nu)
            val = val * cache[part]
        total = total + val
    return total
