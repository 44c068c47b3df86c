"""Symmetric functions named by a basis and an index, as used for F[Delta]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinat import e_to_p, p_to_e
from .scalars import ONE, QQt, ZERO


@dataclass(frozen=True)
class SymSpec:
    """``e_lam`` or ``p_lam`` for a partition ``lam`` (an int means a one-part partition)."""

    basis: str
    index: tuple

    def __post_init__(self):
        if self.basis not in ("e", "p"):
            raise ValueError(f"unknown basis {self.basis!r}; expected 'e' or 'p'")
        idx = (self.index,) if isinstance(self.index, int) else tuple(self.index)
        if any(int(i) < 1 for i in idx):
            raise ValueError("SymSpec index parts must be at least 1")
        object.__setattr__(self, "index", tuple(sorted((int(i) for i in idx), reverse=True)))

    @classmethod
    def e(cls, *parts):
        return cls("e", parts)

    @classmethod
    def p(cls, *parts):
        return cls("p", parts)

    @property
    def degree(self):
        return sum(self.index)

    def __str__(self):
        if len(self.index) == 1:
            return f"{self.basis}{self.index[0]}"
        return f"{self.basis}({','.join(map(str, self.index))})"


def _mul_expansions(a, b):
    out = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            key = tuple(sorted(la + lb, reverse=True))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def as_power_sums(F):
    """``{partition: Fraction}`` with ``F = sum c * p_partition``."""
    if isinstance(F, dict):
        return {tuple(k): Fraction(v) for k, v in F.items()}
    if F.basis == "p":
        return {F.index: Fraction(1)}
    out = {(): Fraction(1)}
    for r in F.index:
        out = _mul_expansions(out, e_to_p(r))
    return out


def as_elementary(F):
    """``{partition: Fraction}`` with ``F = sum c * e_partition``."""
    if F.basis == "e":
        return {F.index: Fraction(1)}
    out = {(): Fraction(1)}
    for m in F.index:
        out = _mul_expansions(out, p_to_e(m))
    return out


def _frac(c):
    return QQt(c.numerator, c.denominator)


def evaluate_on_alphabet(F, letters):
    """``F`` evaluated on a finite alphabet of scalars (each letter a monomial-like ``QQt``)."""
    letters = list(letters)
    if isinstance(F, SymSpec) and F.basis == "e":
        total = ONE
        for r in F.index:
            total = total * elementary_of(r, letters)
        return total
    total = ZERO
    powers = {}
    for lam, c in as_power_sums(F).items():
        val = _frac(c)
        for m in lam:
            if m not in powers:
                acc = ZERO
                for z in letters:
                    acc = acc + z ** m
                powers[m] = acc
            val = val * powers[m]
        total = total + val
    return total


def elementary_of(r, letters):
    """``e_r`` of a list of scalars by the usual one-letter-at-a-time recurrence."""
    e = [ONE] + [ZERO] * r
    for z in letters:
        for j in range(r, 0, -1):
            e[j] = e[j] + e[j - 1] * z
    return e[r]
