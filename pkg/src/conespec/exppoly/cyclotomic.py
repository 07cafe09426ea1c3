"""Exact arithmetic in Q(zeta_N) in the power basis modulo the cyclotomic polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable

import sympy

from ..kernel import poly as P
from . import intervals as I


@lru_cache(maxsize=None)
def cyclotomic(N: int) -> tuple:
    x = sympy.Symbol("x")
    coeffs = sympy.cyclotomic_poly(N, x, polys=True).all_coeffs()
    return tuple(Fraction(int(c)) for c in reversed(coeffs))


class CyclotomicField:
    """Q(zeta_N) with zeta_N = exp(2 pi i / N); elements are coordinate tuples."""

    def __init__(self, N: int):
        self.N = N
        self.phi = cyclotomic(N)
        self.dim = len(self.phi) - 1
        table = []
        for k in range(N):
            mono = tuple([Fraction(0)] * k + [Fraction(1)])
            r = P.rem(mono, self.phi)
            table.append(tuple(r) + (Fraction(0),) * (self.dim - len(r)))
        self._table = table

    def from_powers(self, powers: Iterable[tuple[int, Fraction]]) -> tuple:
        """sum c zeta^k for (k, c) pairs, reduced."""
        acc = [Fraction(0)] * self.dim
        for k, c in powers:
            if not c:
                continue
            row = self._table[k % self.N]
            for j, r in enumerate(row):
                if r:
                    acc[j] += c * r
        return tuple(acc)

    @staticmethod
    def rational_value(coords: tuple) -> Fraction | None:
        if all(c == 0 for c in coords[1:]):
            return coords[0] if coords else Fraction(0)
        return None

    def enclose(self, coords: tuple, bits: int):
        """Rigorous enclosures (real part, imaginary part) as Fraction pairs."""
        with I.precision(bits):
            re = I.iv.mpf(0)
            im = I.iv.mpf(0)
            for j, c in enumerate(coords):
                if not c:
                    continue
                cj = I.from_fraction(c)
                re += cj * I.cos_turn(Fraction(j, self.N))
                im += cj * I.sin_turn(Fraction(j, self.N))
            return I.endpoints(re), I.endpoints(im)


@lru_cache(maxsize=64)
def field(N: int) -> CyclotomicField:
    return CyclotomicField(N)


@dataclass(frozen=True)
class CertifiedValue:
    """A real algebraic value known exactly in Q(zeta_N) plus a certified enclosure."""

    order: int
    coords: tuple
    lo: Fraction
    hi: Fraction
    imag_lo: Fraction
    imag_hi: Fraction
    exact: Fraction | None = None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def sign(self) -> int:
        if self.exact is not None:
            return (self.exact > 0) - (self.exact < 0)
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if not any(self.coords):
            return 0
        # the enclosure still straddles 0; tighten until it does not
        bits = 256
        while True:
            (lo, hi), _ = field(self.order).enclose(self.coords, bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def midpoint(self) -> Fraction:
        return self.exact if self.exact is not None else (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint())

    def to_json(self) -> dict:
        out = {"lo": str(self.lo), "hi": str(self.hi)}
        if self.exact is not None:
            out["exact"] = str(self.exact)
        return out


def _magnitude_bits(coords) -> int:
    m = max((abs(c) for c in coords), default=Fraction(0))
    if m == 0:
        return 0
    return max(0, m.numerator.bit_length() - m.denominator.bit_length() + 1)


def certified_sum(entries: Iterable[tuple[Fraction, Fraction, Fraction]], width: Fraction = Fraction(1, 1 << 64),
                  bits: int = 128) -> CertifiedValue:
    """Value of sum (re + i im) exp(2 pi i turn) over entries (re, im, turn) with rational turns."""
    entries = [(Fraction(r), Fraction(i), Fraction(t) % 1) for r, i, t in entries]
    if all(i == 0 and t in (0, Fraction(1, 2)) for _, i, t in entries):
        v = sum((r if t == 0 else -r for r, _, t in entries), Fraction(0))
        return CertifiedValue(2, (v,), v, v, Fraction(0), Fraction(0), v)
    N = 4
    for _, _, t in entries:
        N = lcm(N, t.denominator)
    F = field(N)
    powers = []
    for r, i, t in entries:
        k = int(t * N)
        powers.append((k, r))
        powers.append((k + N // 4, i))
    coords = F.from_powers(powers)
    exact = F.rational_value(coords)
    if exact is not None:
        return CertifiedValue(N, coords, exact, exact, Fraction(0), Fraction(0), exact)
    b = max(bits, _magnitude_bits(coords) + 2 * width.denominator.bit_length() + 16)
    while True:
        (lo, hi), (ilo, ihi) = F.enclose(coords, b)
        if hi - lo <= width:
            return CertifiedValue(N, coords, lo, hi, ilo, ihi, None)
        b *= 2
