"""Compositions, partitions, Bruhat order and small permutation utilities."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class Composition:
    """A finite tuple of nonnegative integers; the empty tuple is allowed."""

    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"composition parts must be nonnegative: {parts}")
        object.__setattr__(self, "parts", parts)

    def __len__(self):
        return len(self.parts)

    @property
    def size(self):
        return sum(self.parts)

    def is_reduced(self):
        return not self.parts or self.parts[-1] != 0

    def reduced(self) -> "Composition":
        return Composition(reduce_composition(self.parts))

    def padded(self, n):
        return pad(self.parts, n)

    def __mul__(self, other):
        return Composition(self.parts + tuple(other.parts))


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    def __len__(self):
        return len(self.parts)

    @property
    def size(self):
        return sum(self.parts)


def pad(mu, n):
    mu = tuple(mu)
    if len(mu) > n:
        raise ValueError(f"composition {mu} is longer than {n}")
    return mu + (0,) * (n - len(mu))


def reduce_composition(mu):
    mu = list(mu)
    while mu and mu[-1] == 0:
        mu.pop()
    return tuple(mu)


def sort_partition(mu):
    """Nonzero parts of ``mu`` in weakly decreasing order."""
    return tuple(sorted((p for p in mu if p), reverse=True))


def compositions(d, n):
    """All weak compositions of ``d`` with exactly ``n`` parts, in lex order."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in compositions(d - first, n - 1):
            yield (first,) + rest


def monomials_up_to(n, degree):
    """Exponent vectors in ``n`` variables of total degree at most ``degree``."""
    out = []
    for d in range(degree + 1):
        out.extend(compositions(d, n))
    return out


def partitions(d, max_part=None, max_len=None):
    """Partitions of ``d`` in reverse lexicographic order."""
    if max_part is None:
        max_part = d
    if d == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


def reduced_compositions(d, max_len):
    """Reduced compositions of size ``d`` and length at most ``max_len``."""
    if d == 0:
        yield ()
        return
    for length in range(1, max_len + 1):
        for c in compositions(d, length):
            if c[-1]:
                yield c


def distinct_permutations(parts):
    """Distinct rearrangements of ``parts`` in lex-descending order."""
    items = sorted(parts, reverse=True)
    out = []

    def rec(prefix, remaining):
        if not remaining:
            out.append(tuple(prefix))
            return
        seen = set()
        for idx, v in enumerate(remaining):
            if v in seen:
                continue
            seen.add(v)
            rec(prefix + [v], remaining[:idx] + remaining[idx + 1:])

    rec([], items)
    return out


# ---------------------------------------------------------------------------
# Bruhat order on exponent vectors


def bruhat_covers(alpha):
    """Elements directly below ``alpha`` under the two cover moves.

    For ``i < j`` with ``alpha_i < alpha_j`` the swap is below ``alpha``; a
    vector whose entries satisfy ``beta_i > beta_j + 1`` lies above the vector
    obtained by moving one unit from position ``i`` to position ``j``.
    """
    alpha = tuple(alpha)
    n = len(alpha)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            a, b = alpha[i], alpha[j]
            if a < b:
                v = list(alpha)
                v[i], v[j] = b, a
                out.append(tuple(v))
            elif a > b + 1:
                v = list(alpha)
                v[i], v[j] = b + 1, a - 1
                out.append(tuple(v))
    return out


@lru_cache(maxsize=None)
def _downset(mu):
    seen = {mu: 0}
    order = [mu]
    queue = deque([mu])
    while queue:
        cur = queue.popleft()
        for nxt in bruhat_covers(cur):
            if nxt not in seen:
                seen[nxt] = 0
                order.append(nxt)
                queue.append(nxt)
    # longest chain from mu gives a linear extension; ties broken by graded-lex
    depth = {mu: 0}
    changed = True
    while changed:
        changed = False
        for cur in order:
            d = depth.get(cur)
            if d is None:
                continue
            for nxt in bruhat_covers(cur):
                if depth.get(nxt, -1) < d + 1:
                    depth[nxt] = d + 1
                    changed = True
    return tuple(sorted(order, key=lambda b: (-depth[b], b)))


def bruhat_downset(mu, n=None):
    """All exponent vectors weakly below ``mu``, smaller elements first.

    ``mu`` is zero-padded to length ``n``; the last entry is ``mu`` itself.
    """
    mu = tuple(mu) if n is None else pad(mu, n)
    return list(_downset(mu))


def bruhat_leq(beta, alpha):
    return tuple(beta) in set(_downset(tuple(alpha)))


def beta_index(nu, i):
    """The statistic ``#{j <= i : nu_j <= nu_i} + #{j > i : nu_i > nu_j}`` (1-indexed)."""
    nu = tuple(nu)
    if not 1 <= i <= len(nu):
        raise IndexError(f"index {i} out of range for composition of length {len(nu)}")
    v = nu[i - 1]
    left = sum(1 for j in range(i) if nu[j] <= v)
    right = sum(1 for j in range(i, len(nu)) if v > nu[j])
    return left + right


# ---------------------------------------------------------------------------
# symmetric function coefficients


def z_lambda(lam):
    out = 1
    for part, mult in _multiplicities(lam).items():
        out *= part ** mult * math.factorial(mult)
    return out


def _multiplicities(lam):
    counts = {}
    for p in lam:
        counts[p] = counts.get(p, 0) + 1
    return counts


@lru_cache(maxsize=None)
def _e_to_p(r):
    return tuple(
        (lam, Fraction((-1) ** (r - len(lam)), z_lambda(lam))) for lam in partitions(r)
    )


def e_to_p(r):
    """Coefficients ``c`` with ``e_r = sum c[lam] * p_lam`` over partitions of ``r``."""
    return dict(_e_to_p(r))


@lru_cache(maxsize=None)
def _p_to_e(m):
    # Newton: p_m = (-1)^(m-1) m e_m + sum_{i=1}^{m-1} (-1)^(i-1) e_i p_{m-i}
    out = {}
    if m >= 1:
        out[(m,)] = Fraction((-1) ** (m - 1) * m)
    for i in range(1, m):
        for lam, c in _p_to_e(m - i).items():
            key = tuple(sorted(lam + (i,), reverse=True))
            out[key] = out.get(key, 0) + (-1) ** (i - 1) * c
    return {k: v for k, v in out.items() if v}


def p_to_e(m):
    """Coefficients ``c`` with ``p_m = sum c[lam] * e_lam`` (Newton identities)."""
    return dict(_p_to_e(m))


# ---------------------------------------------------------------------------
# permutations as one-line tuples of 1-based values


def perm_length(perm):
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


def reduced_word(perm):
    """A reduced word ``[i_1, ..., i_l]`` with ``perm = s_{i_1} ... s_{i_l}``.

    Composition is of functions, so ``s_{i_l}`` acts first. Right descents are
    peeled off: if ``perm(i) > perm(i+1)`` then ``perm = (perm s_i) s_i``.
    """
    p = list(perm)
    word = []
    while True:
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i + 1)
                break
        else:
            break
    word.reverse()
    return word


def perm_from_word(word, n):
    # compose as functions: (s_{i_1} ... s_{i_l})(j)
    out = []
    for j in range(1, n + 1):
        v = j
        for i in reversed(word):
            if v == i:
                v = i + 1
            elif v == i + 1:
                v = i
        out.append(v)
    return tuple(out)


def inverse_perm(perm):
    inv = [0] * len(perm)
    for pos, v in enumerate(perm, start=1):
        inv[v - 1] = pos
    return tuple(inv)


def min_coset_reps(n, k, r):
    """Minimal left coset representatives of ``S_(1^k, n-k)`` modulo ``S_(1^k, r, n-k-r)``.

    Each representative fixes ``1..k``, is increasing on positions
    ``k+1..k+r`` and on ``k+r+1..n``, and is determined by the set of values it
    takes on the block of size ``r``.
    """
    reps = []
    for subset in itertools.combinations(range(k + 1, n + 1), r):
        rest = [v for v in range(k + 1, n + 1) if v not in subset]
        reps.append(tuple(range(1, k + 1)) + subset + tuple(rest))
    return reps


def t_factorial_terms(m):
    """Exponent multiset of ``[m]_t!`` as ``{exponent: count}``."""
    poly = {0: 1}
    for i in range(1, m + 1):
        nxt = {}
        for e, c in poly.items():
            for j in range(i):
                nxt[e + j] = nxt.get(e + j, 0) + c
        poly = nxt
    return poly
