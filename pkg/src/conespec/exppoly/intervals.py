"""Thin wrapper over mpmath's rigorous interval context.

``mpmath.iv`` keeps its precision in global state, so every use goes through
``precision`` which serializes access and restores the previous setting.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv
from mpmath.libmp import to_rational

_LOCK = threading.RLock()


@contextmanager
def precision(bits: int):
    with _LOCK:
        old = iv.prec
        iv.prec = bits
        try:
            yield iv
        finally:
            iv.prec = old


def from_fraction(x) -> "iv.mpf":
    x = Fraction(x)
    return iv.mpf(x.numerator) / x.denominator


def endpoints(x) -> tuple[Fraction, Fraction]:
    a, b = x._mpi_
    p, q = to_rational(a)
    r, s = to_rational(b)
    return Fraction(int(p), int(q)), Fraction(int(r), int(s))


def cos_turn(x: Fraction):
    """Enclosure of cos(2 pi x)."""
    x = Fraction(x) % 1
    if x == 0:
        return iv.mpf(1)
    if x == Fraction(1, 2):
        return iv.mpf(-1)
    if x in (Fraction(1, 4), Fraction(3, 4)):
        return iv.mpf(0)
    return iv.cos(2 * iv.pi * from_fraction(x))


def sin_turn(x: Fraction):
    """Enclosure of sin(2 pi x)."""
    x = Fraction(x) % 1
    if x in (0, Fraction(1, 2)):
        return iv.mpf(0)
    if x == Fraction(1, 4):
        return iv.mpf(1)
    if x == Fraction(3, 4):
        return iv.mpf(-1)
    return iv.sin(2 * iv.pi * from_fraction(x))


def width(x) -> Fraction:
    lo, hi = endpoints(x)
    return hi - lo
