"""Exact real and complex algebraic numbers.

A :class:`RealAlgebraic` is a monic irreducible polynomial over Q together with
a rational interval containing exactly one of its roots.  Rationals are the
degree-one case and are stored exactly (``lo == hi``).  Arithmetic goes through
resultants; the correct root of the resultant is picked out by refining the
operand intervals until the enclosure meets exactly one root.  Values are
immutable: ``refine`` returns a new object designating the same root.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Callable, Iterable

from . import poly as P


def _iroot_floor(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def kth_root_bounds(t: Fraction, k: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rationals lo <= t^(1/k) <= hi with hi - lo <= 2^-bits (t >= 0)."""
    if t == 0:
        return Fraction(0), Fraction(0)
    scale = 1 << bits
    num = t * scale ** k
    lo_i = _iroot_floor(num.numerator // num.denominator, k)
    hi_i = _iroot_floor(-(-num.numerator // num.denominator), k) + 1
    return Fraction(lo_i, scale), Fraction(hi_i, scale)


def _interval_mul(a, b):
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(prods), max(prods)


def _interval_pow(a, k):
    lo, hi = a
    if k % 2 == 1 or lo >= 0:
        return (lo ** k, hi ** k) if lo <= hi else (hi ** k, lo ** k)
    if hi <= 0:
        return hi ** k, lo ** k
    return Fraction(0), max(lo ** k, hi ** k)


@total_ordering
class RealAlgebraic:
    """A real algebraic number given by its minimal polynomial and an isolating interval."""

    __slots__ = ("minpoly", "lo", "hi")

    def __init__(self, minpoly: P.Poly, lo: Fraction, hi: Fraction):
        object.__setattr__(self, "minpoly", minpoly)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("RealAlgebraic is immutable")

    # construction -------------------------------------------------------

    @classmethod
    def from_rational(cls, q) -> "RealAlgebraic":
        q = P.as_fraction(q)
        return cls((-q, Fraction(1)), q, q)

    @classmethod
    def coerce(cls, value) -> "RealAlgebraic":
        if isinstance(value, RealAlgebraic):
            return value
        return cls.from_rational(value)

    @classmethod
    def real_roots(cls, p: Iterable) -> list["RealAlgebraic"]:
        """All distinct real roots of a nonzero rational polynomial, ascending."""
        p = P.poly(p)
        roots: list[RealAlgebraic] = []
        for q, _ in P.factor(p):
            roots.extend(cls.roots_of_irreducible(q))
        roots.sort()
        return roots

    @classmethod
    def roots_of_irreducible(cls, q: P.Poly) -> list["RealAlgebraic"]:
        q = P.monic(q)
        if len(q) == 2:
            r = -q[0]
            return [cls(q, r, r)]
        return [cls(q, a, b) for a, b in P.isolate_real_roots(q)]

    @classmethod
    def sqrt(cls, q) -> "RealAlgebraic":
        return cls.coerce(q).nth_root(2)

    # basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def is_rational(self) -> bool:
        return len(self.minpoly) == 2

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.lo

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self, width) -> "RealAlgebraic":
        width = P.as_fraction(width)
        if self.is_rational or self.width <= width:
            return self
        lo, hi = P.refine_real_root(self.minpoly, self.lo, self.hi, width)
        return RealAlgebraic(self.minpoly, lo, hi)

    def halve(self) -> "RealAlgebraic":
        if self.is_rational:
            return self
        mid = (self.lo + self.hi) / 2
        # the minimal polynomial has no rational root, so mid is never the root
        if P.count_roots(self.minpoly, self.lo, mid) == 1:
            return RealAlgebraic(self.minpoly, self.lo, mid)
        return RealAlgebraic(self.minpoly, mid, self.hi)

    def enclosure(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    def sign(self) -> int:
        if self.is_rational:
            return (self.lo > 0) - (self.lo < 0)
        x = self
        while x.lo < 0 < x.hi:
            x = x.halve()
        return 1 if x.lo >= 0 else -1

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.lo)
        x = self.refine(Fraction(1, 1 << 60))
        return float((x.lo + x.hi) / 2)

    # comparison ---------------------------------------------------------

    def _same_root(self, other: "RealAlgebraic") -> bool:
        if self.minpoly != other.minpoly:
            return False
        if self.is_rational:
            return True
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return False
        return P.count_roots(self.minpoly, lo, hi) == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.lo == other
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        return self._same_root(other)

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.lo)
        return hash(self.minpoly)

    def compare(self, other) -> int:
        other = RealAlgebraic.coerce(other)
        if self._same_root(other):
            return 0
        a, b = self, other
        while True:
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
            if a.width >= b.width and not a.is_rational:
                a = a.halve()
            elif not b.is_rational:
                b = b.halve()
            else:
                a = a.halve()

    def __lt__(self, other) -> bool:
        if not isinstance(other, (RealAlgebraic, int, Fraction)):
            return NotImplemented
        return self.compare(other) < 0

    # arithmetic ---------------------------------------------------------

    def __neg__(self) -> "RealAlgebraic":
        return RealAlgebraic(P.reflect(self.minpoly), -self.hi, -self.lo)

    def __abs__(self) -> "RealAlgebraic":
        return -self if self.sign() < 0 else self

    def _add_rational(self, q: Fraction) -> "RealAlgebraic":
        if self.is_rational:
            return RealAlgebraic.from_rational(self.lo + q)
        return RealAlgebraic(P.monic(P.shift(self.minpoly, q)), self.lo + q, self.hi + q)

    def _mul_rational(self, q: Fraction) -> "RealAlgebraic":
        if q == 0:
            return RealAlgebraic.from_rational(0)
        if self.is_rational:
            return RealAlgebraic.from_rational(self.lo * q)
        lo, hi = self.lo * q, self.hi * q
        if lo > hi:
            lo, hi = hi, lo
        return RealAlgebraic(P.scale_root(self.minpoly, q), lo, hi)

    def inverse(self) -> "RealAlgebraic":
        if self.is_rational:
            if self.lo == 0:
                raise ZeroDivisionError("inverse of zero")
            return RealAlgebraic.from_rational(1 / self.lo)
        x = self
        while x.lo <= 0 <= x.hi:
            x = x.halve()
        return RealAlgebraic(P.reverse(x.minpoly), 1 / x.hi, 1 / x.lo)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._add_rational(Fraction(other))
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        if other.is_rational:
            return self._add_rational(other.lo)
        if self.is_rational:
            return other._add_rational(self.lo)
        cands = P.factor(P.sum_poly(self.minpoly, other.minpoly))
        return _identify(cands, (self, other), lambda a, b: (a.lo + b.lo, a.hi + b.hi))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._add_rational(-Fraction(other))
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._mul_rational(Fraction(other))
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        if other.is_rational:
            return self._mul_rational(other.lo)
        if self.is_rational:
            return other._mul_rational(self.lo)
        cands = P.factor(P.product_poly(self.minpoly, other.minpoly))
        return _identify(cands, (self, other),
                         lambda a, b: _interval_mul((a.lo, a.hi), (b.lo, b.hi)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._mul_rational(1 / Fraction(other))
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RealAlgebraic.from_rational(1)
        if self.is_rational:
            return RealAlgebraic.from_rational(self.lo ** k)
        if k == 1:
            return self
        cands = P.factor(P.power_poly(self.minpoly, k))
        return _identify(cands, (self,), lambda a: _interval_pow((a.lo, a.hi), k))

    def nth_root(self, k: int) -> "RealAlgebraic":
        """The nonnegative real k-th root of a nonnegative number."""
        if k < 1:
            raise ValueError("root index must be positive")
        if k == 1:
            return self
        s = self.sign()
        if s < 0:
            raise ValueError("nth_root of a negative number")
        if s == 0:
            return self
        if self.is_rational:
            q = self.lo
            num = _iroot_floor(q.numerator, k)
            den = _iroot_floor(q.denominator, k)
            if num ** k == q.numerator and den ** k == q.denominator:
                return RealAlgebraic.from_rational(Fraction(num, den))
        x = self
        while x.lo <= 0:
            x = x.halve()
        cands = P.factor(P.substitute_power(x.minpoly, k))

        def enclose(a, _state={"bits": 8}):
            _state["bits"] += 4
            lo, _ = kth_root_bounds(a.lo, k, _state["bits"])
            _, hi = kth_root_bounds(a.hi, k, _state["bits"])
            return lo, hi

        return _identify(cands, (x,), enclose, positive=True)

    # display ------------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_rational:
            return f"RealAlgebraic({self.lo})"
        return f"RealAlgebraic(root of {P.to_str(self.minpoly)} in [{self.lo}, {self.hi}])"

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.lo)
        x = self.refine(Fraction(1, 10 ** 8))
        return f"{float((x.lo + x.hi) / 2):.8g}"

    def to_json(self) -> dict:
        return {"minpoly": [str(c) for c in self.minpoly], "lo": str(self.lo), "hi": str(self.hi),
                "approx": str(self)}


def _identify(cands, operands, enclose: Callable, positive: bool = False) -> RealAlgebraic:
    """Pick the unique root among the candidate factors lying in the enclosure."""
    ops = list(operands)
    while True:
        lo, hi = enclose(*ops)
        if positive and lo <= 0:
            lo = Fraction(0)
        hits = []
        for q, _ in cands:
            c = P.count_roots(q, lo, hi)
            if c:
                hits.append((q, c))
        if len(hits) == 1 and hits[0][1] == 1:
            q = hits[0][0]
            if len(q) == 2:
                return RealAlgebraic.from_rational(-q[0])
            if lo == hi:
                raise AssertionError("irrational root enclosed by a point interval")
            return RealAlgebraic(q, lo, hi)
        if not hits:
            raise AssertionError("no candidate root in enclosure; arithmetic inconsistency")
        ops = [op.halve() for op in ops]


class ComplexAlgebraic:
    """A non-real root of an irreducible rational polynomial, held by an isolating rectangle."""

    __slots__ = ("minpoly", "_box")

    def __init__(self, minpoly: P.Poly, box):
        object.__setattr__(self, "minpoly", minpoly)
        object.__setattr__(self, "_box", box)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexAlgebraic is immutable")

    @classmethod
    def roots_of_irreducible(cls, q: P.Poly) -> list["ComplexAlgebraic"]:
        """Non-real roots of q: each upper-half-plane root followed by its conjugate."""
        out = []
        for box in P.isolate_complex_roots(q):
            out.append(cls(q, box))
            out.append(cls(q, box.conjugate()))
        return out

    @property
    def box(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(re_lo, re_hi, im_lo, im_hi)."""
        b = self._box
        return (P._from_qq(b.ax), P._from_qq(b.bx), P._from_qq(b.ay), P._from_qq(b.by))

    @property
    def upper(self) -> bool:
        return self.box[3] > 0

    def refine(self, width) -> "ComplexAlgebraic":
        width = P.as_fraction(width)
        b = self._box
        while True:
            re_lo, re_hi, im_lo, im_hi = (P._from_qq(b.ax), P._from_qq(b.bx),
                                          P._from_qq(b.ay), P._from_qq(b.by))
            if max(re_hi - re_lo, im_hi - im_lo) <= width:
                return ComplexAlgebraic(self.minpoly, b)
            b = b.refine()

    def conjugate(self) -> "ComplexAlgebraic":
        return ComplexAlgebraic(self.minpoly, self._box.conjugate())

    def root_index(self) -> int:
        """Position of this root among the canonical isolating boxes of its polynomial."""
        canon = _canonical_complex(self.minpoly)
        b = self._box
        while True:
            box = (P._from_qq(b.ax), P._from_qq(b.bx), P._from_qq(b.ay), P._from_qq(b.by))
            hits = [i for i, c in enumerate(canon) if _boxes_meet(box, c)]
            if len(hits) == 1:
                return hits[0]
            if not hits:
                raise AssertionError("complex root outside every canonical box")
            b = b.refine()

    def same_root(self, other: "ComplexAlgebraic") -> bool:
        return self.minpoly == other.minpoly and self.root_index() == other.root_index()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexAlgebraic):
            return NotImplemented
        return self.same_root(other)

    def __hash__(self) -> int:
        return hash((self.minpoly, self.root_index()))

    def modulus_squared(self) -> RealAlgebraic:
        return _modulus_squared(self)

    def modulus(self) -> RealAlgebraic:
        return self.modulus_squared().nth_root(2)

    def trace(self) -> RealAlgebraic:
        """c + conj(c) = 2 Re c."""
        return _trace(self)

    def __repr__(self) -> str:
        x0, x1, y0, y1 = self.box
        return (f"ComplexAlgebraic(root of {P.to_str(self.minpoly)} in "
                f"[{x0}, {x1}] + i[{y0}, {y1}])")

    def __str__(self) -> str:
        z = self.refine(Fraction(1, 10 ** 8))
        x0, x1, y0, y1 = z.box
        re, im = float((x0 + x1) / 2), float((y0 + y1) / 2)
        return f"{re:.8g}{'+' if im >= 0 else '-'}{abs(im):.8g}i"

    def to_json(self) -> dict:
        x0, x1, y0, y1 = self.box
        return {"minpoly": [str(c) for c in self.minpoly],
                "re": [str(x0), str(x1)], "im": [str(y0), str(y1)], "approx": str(self)}


def _boxes_meet(a, b) -> bool:
    return not (a[1] < b[0] or b[1] < a[0] or a[3] < b[2] or b[3] < a[2])


@lru_cache(maxsize=1024)
def _canonical_complex(q: P.Poly) -> tuple:
    out = []
    for z in ComplexAlgebraic.roots_of_irreducible(q):
        out.append(z.box)
    return tuple(out)


def _sq_range(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    if lo <= 0 <= hi:
        return Fraction(0), max(lo * lo, hi * hi)
    a, b = lo * lo, hi * hi
    return min(a, b), max(a, b)


def _modulus_squared(z: ComplexAlgebraic) -> RealAlgebraic:
    cands = P.factor(P.product_poly(z.minpoly, z.minpoly))
    box = z._box
    while True:
        x0, x1, y0, y1 = (P._from_qq(box.ax), P._from_qq(box.bx), P._from_qq(box.ay), P._from_qq(box.by))
        a0, a1 = _sq_range(x0, x1)
        b0, b1 = _sq_range(y0, y1)
        lo, hi = a0 + b0, a1 + b1
        hits = [(q, P.count_roots(q, lo, hi)) for q, _ in cands]
        hits = [h for h in hits if h[1]]
        if len(hits) == 1 and hits[0][1] == 1:
            q = hits[0][0]
            if len(q) == 2:
                return RealAlgebraic.from_rational(-q[0])
            return RealAlgebraic(q, lo, hi)
        box = box.refine()


def _trace(z: ComplexAlgebraic) -> RealAlgebraic:
    cands = P.factor(P.sum_poly(z.minpoly, z.minpoly))
    box = z._box
    while True:
        lo, hi = 2 * P._from_qq(box.ax), 2 * P._from_qq(box.bx)
        hits = [(q, P.count_roots(q, lo, hi)) for q, _ in cands]
        hits = [h for h in hits if h[1]]
        if len(hits) == 1 and hits[0][1] == 1:
            q = hits[0][0]
            if len(q) == 2:
                return RealAlgebraic.from_rational(-q[0])
            return RealAlgebraic(q, lo, hi)
        box = box.refine()


def as_real_algebraic(x) -> RealAlgebraic:
    return RealAlgebraic.coerce(x)
