"""Exact arithmetic in Q(q, t).

``IntPoly2`` is an integer polynomial in q and t, ``QQt`` a canonical fraction
of two of them, and ``TSeries`` a truncated Laurent expansion in t whose
coefficients are rational functions of q alone.

Canonical term order is graded: terms are compared by total degree, then by
the t-degree, then by the q-degree, smallest first. Canonical text lists terms
in that order, so ``1 - q*t`` prints its constant term first. A canonical
fraction has coprime numerator and denominator, no common integer content,
and a positive first denominator coefficient.
"""

from __future__ import annotations

import math

from sympy.polys.densebasic import dmp_from_dict, dmp_to_dict
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dmp_inner_gcd
from sympy.polys.polyerrors import HeuristicGCDFailed
from sympy.polys.rings import ring

from . import kernel as K
from .kernel import pack, unpack

_RING, _, _ = ring("q,t", ZZ)

INFINITY = math.inf


# ---------------------------------------------------------------------------
# raw polynomial helpers (packed dicts)


def _order_key(key):
    a, b = unpack(key)
    return (a + b, b, a)


def sorted_terms(f):
    """Terms of a raw polynomial as ``((deg_q, deg_t), coeff)`` in canonical order."""
    return [(unpack(k), f[k]) for k in sorted(f, key=_order_key)]


def min_exponents(f):
    amin = bmin = None
    for k in f:
        a, b = unpack(k)
        if amin is None or a < amin:
            amin = a
        if bmin is None or b < bmin:
            bmin = b
    return amin, bmin


def ord_t(f):
    """Smallest t-exponent of a nonzero raw polynomial."""
    return min(unpack(k)[1] for k in f)


def content(f):
    g = 0
    for v in f.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


def _to_sym(f):
    return _RING.from_dict({unpack(k): v for k, v in f.items()})


def _from_sym(p):
    return {pack(a, b): int(c) for (a, b), c in p.items()}


def pcofactors(f, g):
    """Return ``(h, f/h, g/h)`` with ``h`` the gcd of two nonzero polynomials.

    Inputs must have nonnegative exponents. The gcd carries the common integer
    content; its sign is whatever the backend produces.
    """
    if f == g:
        return dict(f), {0: 1}, {0: 1}
    fa, fb = min_exponents(f)
    ga, gb = min_exponents(g)
    ha, hb = min(fa, ga), min(fb, gb)
    shift = pack(ha, hb)
    if shift:
        f = K.pshift(f, -shift)
        g = K.pshift(g, -shift)
    if len(f) == 1 or len(g) == 1:
        # a monomial shares only a monomial and integer content with anything
        (fa, fb), (ga, gb) = min_exponents(f), min_exponents(g)
        c = math.gcd(content(f), content(g))
        h = {pack(min(fa, ga), min(fb, gb)): c}
    else:
        try:
            hs, cf, cg = _to_sym(f).cofactors(_to_sym(g))
            h = _from_sym(hs)
            cf = _from_sym(cf)
            cg = _from_sym(cg)
            return K.pshift(h, shift), cf, cg
        except HeuristicGCDFailed:  # pragma: no cover - exercised only on adversarial input
            df = dmp_from_dict({unpack(k): ZZ(v) for k, v in f.items()}, 1, ZZ)
            dg = dmp_from_dict({unpack(k): ZZ(v) for k, v in g.items()}, 1, ZZ)
            dh, dcf, dcg = dmp_inner_gcd(df, dg, 1, ZZ)
            h = {pack(*e): int(c) for e, c in dmp_to_dict(dh, 1).items()}
            cf = {pack(*e): int(c) for e, c in dmp_to_dict(dcf, 1).items()}
            cg = {pack(*e): int(c) for e, c in dmp_to_dict(dcg, 1).items()}
            return K.pshift(h, shift), cf, cg
    cf = pdivexact(f, h)
    cg = pdivexact(g, h)
    return K.pshift(h, shift), cf, cg


def pdivexact(f, g):
    """Exact quotient ``f / g`` of raw Laurent polynomials, or ``None``."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return {}
    if len(g) == 1:
        (kg, vg), = g.items()
        out = {}
        for k, v in f.items():
            qv, r = divmod(v, vg)
            if r:
                return None
            out[k - kg] = qv
        return out
    r = dict(f)
    lg = max(g)
    lc = g[lg]
    # in lex order min(f) = min(q) + min(g) whenever g divides f exactly
    floor = min(f) - min(g)
    quo = {}
    while r:
        lr = max(r)
        k = lr - lg
        if k < floor:
            return None
        qv, rem = divmod(r[lr], lc)
        if rem:
            return None
        quo[k] = qv
        K.iaddmul(r, g, {k: -qv})
    return quo


def plcm_cofactors(d1, d2):
    """Return ``(L, m1, m2)`` with ``L = d1*m1 = d2*m2`` a least common multiple."""
    if d1 == d2:
        return dict(d1), {0: 1}, {0: 1}
    if d1 == {0: 1}:
        return dict(d2), dict(d2), {0: 1}
    if d2 == {0: 1}:
        return dict(d1), {0: 1}, dict(d1)
    _, c1, c2 = pcofactors(d1, d2)
    return K.pmul(d1, c2), c2, c1


def poly_text(f):
    """Canonical text of a raw polynomial (nonnegative exponents expected)."""
    if not f:
        return "0"
    parts = []
    for (a, b), c in sorted_terms(f):
        factors = []
        if a:
            factors.append("q" if a == 1 else f"q^{a}")
        if b:
            factors.append("t" if b == 1 else f"t^{b}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# public types


class IntPoly2:
    """Integer polynomial in q and t with nonnegative exponents."""

    __slots__ = ("_d",)

    def __init__(self, terms=None):
        d = {}
        if terms:
            for (a, b), c in dict(terms).items():
                if a < 0 or b < 0:
                    raise ValueError("IntPoly2 exponents must be nonnegative")
                c = int(c)
                if c:
                    k = pack(a, b)
                    d[k] = d.get(k, 0) + c
                    if not d[k]:
                        del d[k]
        self._d = d

    @classmethod
    def _raw(cls, d):
        obj = cls.__new__(cls)
        obj._d = d
        return obj

    @property
    def terms(self):
        return dict(sorted_terms(self._d))

    def is_zero(self):
        return not self._d

    def ord_t(self):
        return ord_t(self._d) if self._d else INFINITY

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly2({(0, 0): other})
        if not isinstance(other, IntPoly2):
            return NotImplemented
        return self._d == other._d

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __add__(self, other):
        return IntPoly2._raw(K.padd(self._d, _as_intpoly(other)._d))

    __radd__ = __add__

    def __sub__(self, other):
        return IntPoly2._raw(K.psub(self._d, _as_intpoly(other)._d))

    def __rsub__(self, other):
        return IntPoly2._raw(K.psub(_as_intpoly(other)._d, self._d))

    def __neg__(self):
        return IntPoly2._raw(K.pneg(self._d))

    def __mul__(self, other):
        return IntPoly2._raw(K.pmul(self._d, _as_intpoly(other)._d))

    __rmul__ = __mul__

    def gcd(self, other):
        if not self._d:
            return other
        if not other._d:
            return self
        h, _, _ = pcofactors(self._d, other._d)
        return IntPoly2._raw(_normalize_sign(h))

    def exact_div(self, other):
        q = pdivexact(self._d, other._d)
        if q is None or any(a < 0 or b < 0 for a, b in map(unpack, q)):
            raise ArithmeticError("polynomial division is not exact")
        return IntPoly2._raw(q)

    def __str__(self):
        return poly_text(self._d)

    def __repr__(self):
        return f"IntPoly2({poly_text(self._d)!r})"


def _as_intpoly(x):
    if isinstance(x, IntPoly2):
        return x
    if isinstance(x, int):
        return IntPoly2({(0, 0): x})
    raise TypeError(f"cannot use {type(x).__name__} as IntPoly2")


def _normalize_sign(f):
    if f and f[min(f, key=_order_key)] < 0:
        return K.pneg(f)
    return f


def canonical_fraction(n, d):
    """Reduce raw Laurent polynomials ``n/d`` to canonical ``(num, den)``."""
    if not d:
        raise ZeroDivisionError("division by zero in Q(q,t)")
    if not n:
        return {}, {0: 1}
    na, nb = min_exponents(n)
    da, db = min_exponents(d)
    if na or nb:
        n = K.pshift(n, -pack(na, nb))
    if da or db:
        d = K.pshift(d, -pack(da, db))
    ea, eb = na - da, nb - db
    if len(d) == 1:
        (dc,) = d.values()
        g = math.gcd(content(n), dc)
        if g != 1:
            n = {k: v // g for k, v in n.items()}
            dc //= g
        d = {0: dc}
    elif len(n) == 1:
        (nc,) = n.values()
        g = math.gcd(content(d), nc)
        if g != 1:
            d = {k: v // g for k, v in d.items()}
            n = {0: nc // g}
    else:
        _, n, d = pcofactors(n, d)
    shift_n = pack(max(ea, 0), max(eb, 0))
    shift_d = pack(max(-ea, 0), max(-eb, 0))
    if shift_n:
        n = K.pshift(n, shift_n)
    if shift_d:
        d = K.pshift(d, shift_d)
    if d[min(d, key=_order_key)] < 0:
        n = K.pneg(n)
        d = K.pneg(d)
    return n, d


_ONE_D = {0: 1}


class QQt:
    """Element of Q(q, t) kept in canonical form."""

    __slots__ = ("_n", "_d")

    def __init__(self, num=0, den=1):
        n = _as_raw(num)
        d = _as_raw(den)
        self._n, self._d = canonical_fraction(n, d)

    @classmethod
    def _raw(cls, n, d):
        obj = cls.__new__(cls)
        obj._n = n
        obj._d = d
        return obj

    @classmethod
    def from_raw(cls, n, d=None):
        """Build from raw Laurent numerator and denominator dicts."""
        n = {k: v for k, v in n.items() if v}
        if d is not None:
            d = {k: v for k, v in d.items() if v}
            if not d:
                raise ZeroDivisionError("zero denominator")
        if d is None or d == _ONE_D:
            if not n:
                return cls._raw({}, {0: 1})
            na, nb = min_exponents(n)
            if na >= 0 and nb >= 0:
                return cls._raw(dict(n), {0: 1})
            d = {0: 1}
        n, d = canonical_fraction(n, d)
        return cls._raw(n, d)

    @classmethod
    def monomial(cls, a=0, b=0, c=1):
        return cls.from_raw({pack(a, b): c})

    @classmethod
    def parse(cls, text):
        from .dsl import parse_scalar

        return parse_scalar(text)

    @property
    def num(self):
        return IntPoly2._raw(dict(self._n))

    @property
    def den(self):
        return IntPoly2._raw(dict(self._d))

    def raw(self):
        return self._n, self._d

    def is_zero(self):
        return not self._n

    def __bool__(self):
        return bool(self._n)

    def is_polynomial(self):
        return self._d == _ONE_D

    def has_t(self):
        return any(unpack(k)[1] for k in self._n) or any(unpack(k)[1] for k in self._d)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_qqt(other)
        if other is NotImplemented:
            return other
        n1, d1 = self._n, self._d
        n2, d2 = other._n, other._d
        if not n1:
            return other
        if not n2:
            return self
        if d1 == _ONE_D and d2 == _ONE_D:
            return QQt._raw(K.padd(n1, n2), {0: 1})
        if d1 == d2:
            return QQt._raw(*canonical_fraction(K.padd(n1, n2), d1))
        den, m1, m2 = plcm_cofactors(d1, d2)
        return QQt._raw(*canonical_fraction(K.padd(K.pmul(n1, m1), K.pmul(n2, m2)), den))

    __radd__ = __add__

    def __neg__(self):
        return QQt._raw(K.pneg(self._n), self._d)

    def __sub__(self, other):
        other = _as_qqt(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_qqt(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _as_qqt(other)
        if other is NotImplemented:
            return other
        n1, d1 = self._n, self._d
        n2, d2 = other._n, other._d
        if not n1 or not n2:
            return QQt._raw({}, {0: 1})
        if d1 == _ONE_D and d2 == _ONE_D:
            return QQt._raw(K.pmul(n1, n2), {0: 1})
        # cross-cancel keeps the operands small
        if d2 != _ONE_D:
            n1, d2 = _cancel(n1, d2)
        if d1 != _ONE_D:
            n2, d1 = _cancel(n2, d1)
        n = K.pmul(n1, n2)
        d = K.pmul(d1, d2)
        if d[min(d, key=_order_key)] < 0:
            n, d = K.pneg(n), K.pneg(d)
        return QQt._raw(n, d)

    __rmul__ = __mul__

    def inverse(self):
        if not self._n:
            raise ZeroDivisionError("division by zero in Q(q,t)")
        n, d = self._d, self._n
        if d[min(d, key=_order_key)] < 0:
            n, d = K.pneg(n), K.pneg(d)
        return QQt._raw(n, d)

    def __truediv__(self, other):
        other = _as_qqt(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_qqt(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return QQt._raw(K.ppow(self._n, e), K.ppow(self._d, e)) if e else QQt._raw({0: 1}, {0: 1})

    def __eq__(self, other):
        other = _as_qqt(other)
        if other is NotImplemented:
            return False
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        return hash((frozenset(self._n.items()), frozenset(self._d.items())))

    # t-adic -------------------------------------------------------------

    def t_valuation(self):
        return t_valuation(self)

    def __str__(self):
        return qqt_text(self._n, self._d)

    def __repr__(self):
        return f"QQt({qqt_text(self._n, self._d)!r})"


def _cancel(n, d):
    """Cancel the gcd of a numerator against a foreign denominator."""
    if len(d) == 1 and d == _ONE_D:
        return n, d
    _, cn, cd = pcofactors(n, d)
    return cn, cd


def _as_raw(x):
    if isinstance(x, int):
        return {0: x} if x else {}
    if isinstance(x, IntPoly2):
        return dict(x._d)
    if isinstance(x, dict):
        return dict(x)
    raise TypeError(f"cannot build a QQt from {type(x).__name__}")


def _as_qqt(x):
    if isinstance(x, QQt):
        return x
    if isinstance(x, int):
        return QQt._raw({0: x} if x else {}, {0: 1})
    if isinstance(x, IntPoly2):
        return QQt._raw(dict(x._d), {0: 1})
    return NotImplemented


def qqt_text(n, d):
    if not n:
        return "0"
    ntext = poly_text(n)
    if d == _ONE_D:
        return ntext
    dtext = poly_text(d)
    if len(n) > 1:
        ntext = f"({ntext})"
    if len(d) > 1 or "*" in dtext:
        dtext = f"({dtext})"
    return f"{ntext}/{dtext}"


ZERO = QQt._raw({}, {0: 1})
ONE = QQt._raw({0: 1}, {0: 1})
Q = QQt._raw({pack(1, 0): 1}, {0: 1})
T = QQt._raw({pack(0, 1): 1}, {0: 1})


def qqt_arith(a, b, kind):
    """Apply ``kind`` in ``{"add", "sub", "mul", "div"}`` to two scalars."""
    a, b = _as_qqt(a), _as_qqt(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def raw_t_valuation(n, d):
    """``ord_t(n) - ord_t(d)`` for raw Laurent polynomials, no reduction needed."""
    if not n:
        return INFINITY
    return ord_t(n) - ord_t(d)


def t_valuation(a):
    a = _as_qqt(a)
    return raw_t_valuation(a._n, a._d)


# ---------------------------------------------------------------------------
# truncated t-series


def _t_slices(f):
    """Split a raw polynomial into ``{t-exponent: raw q-polynomial}``."""
    out = {}
    for k, v in f.items():
        a, b = unpack(k)
        out.setdefault(b, {})[pack(a, 0)] = v
    return out


class TSeries:
    """Laurent series in t, exact through ``order`` inclusive.

    ``coeffs`` maps t-exponents to rational functions of q (``QQt`` values
    without t). Exponents above ``order`` are never stored.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        self.order = order
        self.coeffs = {}
        for e, c in (coeffs or {}).items():
            c = _as_qqt(c)
            if e <= order and c:
                if c.has_t():
                    raise ValueError("TSeries coefficients must not involve t")
                self.coeffs[e] = c

    def valuation(self):
        return min(self.coeffs) if self.coeffs else INFINITY

    def truncate(self, order):
        return TSeries(min(order, self.order), self.coeffs)

    def __add__(self, other):
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return TSeries(order, {e: c for e, c in out.items() if e <= order})

    def __neg__(self):
        return TSeries(self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, QQt)):
            other = _as_qqt(other)
            return TSeries(self.order, {e: c * other for e, c in self.coeffs.items()})
        va, vb = self.valuation(), other.valuation()
        if va == INFINITY or vb == INFINITY:
            return TSeries(min(self.order + (vb if vb != INFINITY else 0),
                               other.order + (va if va != INFINITY else 0)))
        order = min(self.order + vb, other.order + va)
        out = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                if e <= order:
                    out[e] = out.get(e, ZERO) + ca * cb
        return TSeries(order, out)

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def agrees_with(self, other, order):
        """True when both series match through ``order`` (inclusive)."""
        if order > self.order or order > other.order:
            raise ValueError("comparison order exceeds a series' precision")
        keys = {e for e in self.coeffs if e <= order} | {e for e in other.coeffs if e <= order}
        return all(self.coeffs.get(e, ZERO) == other.coeffs.get(e, ZERO) for e in keys)

    def resum(self):
        """The exact element of Q(q,t) given by the listed terms."""
        total = ZERO
        for e, c in self.coeffs.items():
            total = total + c * QQt.monomial(0, e)
        return total

    def terms(self):
        return sorted(self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return f"O(t^{self.order + 1})"
        parts = []
        for e, c in self.terms():
            tpart = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            ctext = str(c)
            if not tpart:
                body = ctext if len(c._n) == 1 or c._d != _ONE_D else f"({ctext})"
            elif c == ONE:
                body = tpart
            elif c == -ONE:
                body = "-" + tpart
            elif len(c._n) == 1 and c._d == _ONE_D:
                body = f"{ctext}*{tpart}"
            else:
                body = f"({ctext})*{tpart}"
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return f"{text} + O(t^{self.order + 1})"

    __repr__ = __str__


def t_series(a, order):
    """Expand ``a`` as a Laurent series in t through ``order`` inclusive."""
    a = _as_qqt(a)
    if not a._n:
        return TSeries(order)
    return raw_t_series(a._n, a._d, order)


def raw_t_series(n, d, order):
    """Series of the raw fraction ``n/d``; no prior reduction is required."""
    if not n:
        return TSeries(order)
    ns = _t_slices(n)
    ds = _t_slices(d)
    vn, vd = min(ns), min(ds)
    v = vn - vd
    if order < v:
        return TSeries(order)
    lead = QQt.from_raw(ds[vd])
    lead_inv = lead.inverse()
    dcoef = {j - vd: QQt.from_raw(p) for j, p in ds.items() if j != vd}
    ncoef = {j - vn: QQt.from_raw(p) for j, p in ns.items()}
    out = []
    for i in range(order - v + 1):
        acc = ncoef.get(i, ZERO)
        for j, dj in dcoef.items():
            if j <= i and out[i - j]:
                acc = acc - dj * out[i - j]
        out.append(acc * lead_inv if acc else ZERO)
    return TSeries(order, {v + i: c for i, c in enumerate(out) if c})
