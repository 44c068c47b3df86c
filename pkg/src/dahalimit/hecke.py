"""The standard polynomial representation at truncation level n.

Every operator here has structure constants in Z[q^{+-1}, t^{+-1}], so it acts
on the numerators of a ``Poly`` and leaves the shared denominator alone. The
only exception is the symmetrizer, which divides by a t-factorial once at the
end. Images of single monomials are memoized per operator and level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import kernel as K
from .combinat import monomials_up_to
from .kernel import pack
from .polyring import Poly
from .scalars import QQt, _as_qqt

_ONE = {0: 1}
_T = pack(0, 1)
_TINV = pack(0, -1)
_ONE_MINUS_T = {0: 1, _T: -1}
_T_MINUS_ONE = {0: -1, _T: 1}
_ONE_MINUS_TINV = {0: 1, _TINV: -1}
_TINV_ONLY = {_TINV: 1}

_CACHE: dict = {}


def clear_caches():
    _CACHE.clear()


def _memo(kind):
    store = _CACHE.setdefault(kind, {})
    return store


def _lin(F, image):
    """Apply the linear map with monomial images ``image(m)`` to a raw x-poly."""
    out = {}
    for m, c in F.items():
        K.xaccum(out, c, image(m))
    return out


# ---------------------------------------------------------------------------
# generator images on a single monomial


def _T_image(i, m):
    store = _memo("T")
    key = (i, m)
    img = store.get(key)
    if img is not None:
        return img
    a, b = m[i - 1], m[i]
    img = {}
    sw = m[: i - 1] + (b, a) + m[i + 1:]
    img[sw] = {0: 1}
    if a > b:
        for j in range(a - b):
            e = m[: i - 1] + (a - j, b + j) + m[i + 1:]
            K.xaccum(img, _ONE_MINUS_T, {e: _ONE})
    elif a < b:
        for j in range(b - a):
            e = m[: i - 1] + (b - j, a + j) + m[i + 1:]
            K.xaccum(img, _T_MINUS_ONE, {e: _ONE})
    store[key] = img
    return img


def _Tinv_image(i, m):
    store = _memo("Tinv")
    key = (i, m)
    img = store.get(key)
    if img is not None:
        return img
    # T^{-1} = t^{-1} T + (1 - t^{-1})
    img = K.xscale(_T_image(i, m), _TINV_ONLY)
    K.xaccum(img, _ONE_MINUS_TINV, {m: _ONE})
    store[key] = img
    return img


def _pi_image(m):
    last = m[-1]
    return {(last,) + m[:-1]: {pack(last, 0): 1}}


def T_raw(i, F):
    return _lin(F, lambda m: _T_image(i, m))


def Tinv_raw(i, F):
    return _lin(F, lambda m: _Tinv_image(i, m))


def pi_raw(F):
    out = {}
    for m, c in F.items():
        last = m[-1]
        out[(last,) + m[:-1]] = K.pshift(c, pack(last, 0)) if last else dict(c)
    return out


def X_raw(i, F):
    out = {}
    for m, c in F.items():
        out[m[: i - 1] + (m[i - 1] + 1,) + m[i:]] = dict(c)
    return out


def rho_raw(F):
    return {m: dict(c) for m, c in F.items() if m[0] > 0}


def s_raw(i, F):
    out = {}
    for m, c in F.items():
        out[m[: i - 1] + (m[i], m[i - 1]) + m[i + 1:]] = dict(c)
    return out


# ---------------------------------------------------------------------------
# composite operators, memoized on monomials


def _Y1_image(n, m):
    store = _memo("Y1")
    key = (n, m)
    img = store.get(key)
    if img is None:
        F = {m: _ONE}
        for j in range(1, n):
            F = Tinv_raw(j, F)
        img = pi_raw(F)
        store[key] = img
    return img


def _Y_image(i, n, m):
    """``Y_1`` by its word, ``Y_{i+1} = t^{-1} T_i Y_i T_i`` recursively."""
    if i == 1:
        return _Y1_image(n, m)
    store = _memo("Y")
    key = (i, n, m)
    img = store.get(key)
    if img is None:
        F = _T_image(i - 1, m)
        F = _lin(F, lambda mm: _Y_image(i - 1, n, mm))
        F = T_raw(i - 1, F)
        img = K.xscale(F, _TINV_ONLY)
        store[key] = img
    return img


def _Y_word_image(i, n, m):
    """Independent route: ``Y_i = t^{1-i} T_{i-1}...T_1 pi T_{n-1}^{-1}...T_i^{-1}``."""
    store = _memo("Yword")
    key = (i, n, m)
    img = store.get(key)
    if img is None:
        F = {m: _ONE}
        for j in range(i, n):
            F = Tinv_raw(j, F)
        F = pi_raw(F)
        for j in range(1, i):
            F = T_raw(j, F)
        img = K.xscale(F, {pack(0, 1 - i): 1})
        store[key] = img
    return img


def _Ytilde_image(i, n, m):
    store = _memo("Ytilde")
    key = (i, n, m)
    img = store.get(key)
    if img is None:
        F = {m: _ONE}
        for j in range(i, n):
            F = Tinv_raw(j, F)
        F = rho_raw(pi_raw(F))
        for j in range(1, i):
            F = T_raw(j, F)
        img = K.xscale(F, {pack(0, n - i + 1): 1})
        store[key] = img
    return img


def _pitilde_image(n, m):
    store = _memo("pitilde")
    key = (n, m)
    img = store.get(key)
    if img is None:
        F = {m: _ONE}
        for j in range(n - 1, 0, -1):
            F = Tinv_raw(j, F)
        img = X_raw(1, F)
        store[key] = img
    return img


def t_factorial(m):
    """``[m]_t! = prod_{i<=m} (1 - t^i)/(1 - t)`` as a raw polynomial."""
    out = {0: 1}
    for i in range(1, m + 1):
        out = K.pmul(out, {pack(0, j): 1 for j in range(i)})
    return out


def _eps_numerator_factored(k, n, F):
    """``sum_sigma t^{C(m,2) - l(sigma)} T_sigma F`` via coset factorization."""
    W = F
    for j in range(1, n - k):
        acc = {}
        u = W
        K.xaccum(acc, {pack(0, j): 1}, u)
        for p in range(k + j, k, -1):
            u = T_raw(p, u)
            ell = k + j + 1 - p
            K.xaccum(acc, {pack(0, j - ell): 1}, u)
        W = acc
    return W


def _eps_numerator_bfs(k, n, F):
    """Same sum by breadth-first enumeration of the Young subgroup by length."""
    m = n - k
    top = comb(m, 2)
    ident = tuple(range(1, n + 1))
    layer = {ident: F}
    total = {}
    length = 0
    while layer:
        for img in layer.values():
            K.xaccum(total, {pack(0, top - length): 1}, img)
        nxt = {}
        for sigma, img in layer.items():
            pos = {v: p for p, v in enumerate(sigma)}
            for i in range(k + 1, n):
                if pos[i] < pos[i + 1]:
                    # s_i sigma: swap the values i and i+1
                    s2 = tuple(i + 1 if v == i else i if v == i + 1 else v for v in sigma)
                    if s2 not in nxt:
                        nxt[s2] = T_raw(i, img)
        layer = nxt
        length += 1
    return total


def _eps_image(k, n, m):
    store = _memo("eps")
    key = (k, n, m)
    img = store.get(key)
    if img is None:
        img = _eps_numerator_factored(k, n, {m: _ONE})
        store[key] = img
    return img


# ---------------------------------------------------------------------------
# public operator API


def _check_index(name, i, lo, hi):
    if not lo <= i <= hi:
        raise IndexError(f"{name}{i} is out of range {lo}..{hi} at this level")


def apply_T(i, f):
    _check_index("T", i, 1, f.nvars - 1)
    return f.with_numerators(T_raw(i, f.raw()[0]))


def apply_Tinv(i, f):
    _check_index("T", i, 1, f.nvars - 1)
    return f.with_numerators(Tinv_raw(i, f.raw()[0]))


def apply_X(i, f):
    _check_index("X", i, 1, f.nvars)
    return f.with_numerators(X_raw(i, f.raw()[0]))


def apply_s(i, f):
    _check_index("s", i, 1, f.nvars - 1)
    return f.with_numerators(s_raw(i, f.raw()[0]))


def apply_pi(f):
    if f.nvars < 1:
        raise ValueError("pi needs at least one variable")
    return f.with_numerators(pi_raw(f.raw()[0]))


def apply_pitilde(f):
    n = f.nvars
    return f.with_numerators(_lin(f.raw()[0], lambda m: _pitilde_image(n, m)))


def apply_rho(f):
    return f.with_numerators(rho_raw(f.raw()[0]))


def apply_Y(i, f):
    n = f.nvars
    _check_index("Y", i, 1, n)
    return f.with_numerators(_lin(f.raw()[0], lambda m: _Y_image(i, n, m)))


def apply_Y_word(i, f):
    n = f.nvars
    _check_index("Y", i, 1, n)
    return f.with_numerators(_lin(f.raw()[0], lambda m: _Y_word_image(i, n, m)))


def apply_Ytilde(i, f):
    n = f.nvars
    _check_index("Yt", i, 1, n)
    return f.with_numerators(_lin(f.raw()[0], lambda m: _Ytilde_image(i, n, m)))


def apply_eps(k, f, method="factored"):
    """The partial t-symmetrizer over the Young subgroup fixing ``x_1..x_k``."""
    n = f.nvars
    if not 0 <= k < n:
        raise IndexError(f"eps_{k} needs 0 <= k < n = {n}")
    if n - k == 1:
        return f
    F = f.raw()[0]
    if method == "factored":
        W = _lin(F, lambda m: _eps_image(k, n, m))
    elif method == "bfs":
        W = _eps_numerator_bfs(k, n, F)
    else:
        raise ValueError(f"unknown symmetrizer method {method!r}")
    return f.with_numerators(W).divide_raw(t_factorial(n - k))


# ---------------------------------------------------------------------------
# operator expressions


@dataclass(frozen=True)
class OpExpr:
    """Base class for operator expression nodes."""

    def __mul__(self, other):
        return Prod((self, other))

    def __add__(self, other):
        return Sum((self, other))

    def __sub__(self, other):
        return Sum((self, Scaled(QQt(-1), other)))


@dataclass(frozen=True)
class Gen(OpExpr):
    """A generator: T, Tinv, X, S, Y, Ytilde (indexed), Pi, PiTilde, Rho, or Eps(k)."""

    name: str
    index: int | None = None

    KINDS = ("T", "Tinv", "X", "S", "Y", "Ytilde", "Pi", "PiTilde", "Rho", "Eps")

    def __post_init__(self):
        if self.name not in self.KINDS:
            raise ValueError(f"unknown generator {self.name!r}")


@dataclass(frozen=True)
class Scalar(OpExpr):
    value: QQt


@dataclass(frozen=True)
class Scaled(OpExpr):
    coeff: QQt
    expr: OpExpr


@dataclass(frozen=True)
class Sum(OpExpr):
    items: tuple


@dataclass(frozen=True)
class Prod(OpExpr):
    """Composition; the rightmost factor is applied first."""

    factors: tuple


@dataclass(frozen=True)
class Pow(OpExpr):
    base: OpExpr
    exp: int


@dataclass(frozen=True)
class Psi(OpExpr):
    """``F[t^n Y_1 + ... + t^n Y_n]`` at the evaluation level."""

    spec: object


def T(i):
    return Gen("T", i)


def Tinv(i):
    return Gen("Tinv", i)


def X(i):
    return Gen("X", i)


def Y(i):
    return Gen("Y", i)


def Yt(i):
    return Gen("Ytilde", i)


def Eps(k):
    return Gen("Eps", k)


PI = Gen("Pi")
PITILDE = Gen("PiTilde")
RHO = Gen("Rho")


def word(*factors):
    """Product of the given operator expressions (leftmost applied last)."""
    flat = []
    for f in factors:
        if isinstance(f, Prod):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if len(flat) == 1:
        return flat[0]
    return Prod(tuple(flat))


def _apply_gen(g, f):
    name, i = g.name, g.index
    if name == "T":
        return apply_T(i, f)
    if name == "Tinv":
        return apply_Tinv(i, f)
    if name == "X":
        return apply_X(i, f)
    if name == "S":
        return apply_s(i, f)
    if name == "Y":
        return apply_Y(i, f)
    if name == "Ytilde":
        return apply_Ytilde(i, f)
    if name == "Pi":
        return apply_pi(f)
    if name == "PiTilde":
        return apply_pitilde(f)
    if name == "Rho":
        return apply_rho(f)
    if name == "Eps":
        return apply_eps(i, f)
    raise ValueError(f"unknown generator {name!r}")  # pragma: no cover


def eval_opexpr(e, n, f):
    """Evaluate ``e`` at truncation level ``n`` on ``f``."""
    if n < 1:
        raise ValueError("truncation level must be at least 1")
    if f.nvars != n:
        raise ValueError(f"polynomial has {f.nvars} variables but the level is {n}")
    return _eval(e, f)


def _eval(e, f):
    if isinstance(e, Gen):
        return _apply_gen(e, f)
    if isinstance(e, Scalar):
        return f.scale(e.value)
    if isinstance(e, Scaled):
        return _eval(e.expr, f).scale(e.coeff)
    if isinstance(e, Sum):
        out = Poly.zero(f.nvars)
        for item in e.items:
            out = out + _eval(item, f)
        return out
    if isinstance(e, Prod):
        for factor in reversed(e.factors):
            f = _eval(factor, f)
        return f
    if isinstance(e, Pow):
        if e.exp < 0:
            if isinstance(e.base, Gen) and e.base.name == "T" and e.exp == -1:
                return apply_Tinv(e.base.index, f)
            raise ValueError("negative powers are only supported as T_i^-1")
        for _ in range(e.exp):
            f = _eval(e.base, f)
        return f
    if isinstance(e, Psi):
        from .delta import apply_psi

        return apply_psi(e.spec, f.nvars, f)
    raise TypeError(f"not an operator expression: {e!r}")


# ---------------------------------------------------------------------------
# relation checker


@dataclass
class RelationResult:
    name: str
    ok: bool
    checked: int
    witness: dict | None = None


@dataclass
class RelationReport:
    n: int
    degree_bound: int
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def first_failure(self):
        return next((r for r in self.results if not r.ok), None)

    def to_json(self):
        return [
            {
                "relation": r.name,
                "level_or_exact": "exact",
                "status": "pass" if r.ok else "fail",
                "checked": r.checked,
                "witness": r.witness,
            }
            for r in self.results
        ]


def _compare(name, lhs, rhs, basis, n):
    count = 0
    for m in basis:
        f = Poly._make(n, {m: {0: 1}})
        a, b = lhs(f), rhs(f)
        count += 1
        if a != b:
            return RelationResult(
                name, False, count,
                {"input": list(m), "difference": (a - b).to_json()},
            )
    return RelationResult(name, True, count)


def daha_relations(n):
    """``(name, lhs, rhs)`` for every defining relation at level ``n``.

    The Cherednik operators come from their per-index words so that the
    relation linking consecutive Y's is a genuine check of the recursion used
    by ``apply_Y``.
    """
    rels = []
    t = QQt.monomial(0, 1)
    tinv = QQt.monomial(0, -1)
    q = QQt.monomial(1, 0)
    Yw = apply_Y_word
    for i in range(1, n):
        rels.append((
            f"quadratic T{i}",
            lambda f, i=i: apply_T(i, apply_T(i, f)) + apply_T(i, f).scale(t - 1) - f.scale(t),
            lambda f: Poly.zero(f.nvars),
        ))
        rels.append((
            f"inverse T{i}",
            lambda f, i=i: apply_T(i, apply_Tinv(i, f)),
            lambda f: f,
        ))
    for i in range(1, n - 1):
        rels.append((
            f"braid T{i} T{i + 1}",
            lambda f, i=i: apply_T(i, apply_T(i + 1, apply_T(i, f))),
            lambda f, i=i: apply_T(i + 1, apply_T(i, apply_T(i + 1, f))),
        ))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append((
                f"far commute T{i} T{j}",
                lambda f, i=i, j=j: apply_T(i, apply_T(j, f)),
                lambda f, i=i, j=j: apply_T(j, apply_T(i, f)),
            ))
    for i in range(1, n):
        rels.append((
            f"Tinv{i} X{i} Tinv{i} = t^-1 X{i + 1}",
            lambda f, i=i: apply_Tinv(i, apply_X(i, apply_Tinv(i, f))),
            lambda f, i=i: apply_X(i + 1, f).scale(tinv),
        ))
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                rels.append((
                    f"T{i} X{j} commute",
                    lambda f, i=i, j=j: apply_T(i, apply_X(j, f)),
                    lambda f, i=i, j=j: apply_X(j, apply_T(i, f)),
                ))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append((
                f"X{i} X{j} commute",
                lambda f, i=i, j=j: apply_X(i, apply_X(j, f)),
                lambda f, i=i, j=j: apply_X(j, apply_X(i, f)),
            ))
    for i in range(1, n):
        rels.append((
            f"T{i} Y{i} T{i} = t Y{i + 1}",
            lambda f, i=i: apply_T(i, Yw(i, apply_T(i, f))),
            lambda f, i=i: Yw(i + 1, f).scale(t),
        ))
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                rels.append((
                    f"T{i} Y{j} commute",
                    lambda f, i=i, j=j: apply_T(i, Yw(j, f)),
                    lambda f, i=i, j=j: Yw(j, apply_T(i, f)),
                ))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append((
                f"Y{i} Y{j} commute",
                lambda f, i=i, j=j: Yw(i, Yw(j, f)),
                lambda f, i=i, j=j: Yw(j, Yw(i, f)),
            ))
    if n >= 2:
        rels.append((
            "Y1 T1 X1 = X2 Y1 T1",
            lambda f: Yw(1, apply_T(1, apply_X(1, f))),
            lambda f: apply_X(2, Yw(1, apply_T(1, f))),
        ))

    def all_x(f):
        for j in range(1, n + 1):
            f = apply_X(j, f)
        return f

    rels.append((
        "Y1 X1...Xn = q X1...Xn Y1",
        lambda f: Yw(1, all_x(f)),
        lambda f: all_x(Yw(1, f)).scale(q),
    ))
    rels.append((
        "Y recursion agrees with words",
        lambda f: _sum_Y(f, apply_Y),
        lambda f: _sum_Y(f, apply_Y_word),
    ))
    return rels


def _sum_Y(f, fn):
    out = Poly.zero(f.nvars)
    for i in range(1, f.nvars + 1):
        # weight each index differently so a swapped pair cannot cancel
        out = out + fn(i, f).scale(QQt.monomial(0, 0, i))
    return out


def check_daha_relations(n, degree_bound):
    """Apply both sides of each defining relation to every monomial of bounded degree."""
    basis = monomials_up_to(n, degree_bound)
    report = RelationReport(n, degree_bound)
    for name, lhs, rhs in daha_relations(n):
        report.results.append(_compare(name, lhs, rhs, basis, n))
    return report


def coerce_scalar(c):
    out = _as_qqt(c)
    if out is NotImplemented:
        raise TypeError(f"not a scalar: {c!r}")
    return out
