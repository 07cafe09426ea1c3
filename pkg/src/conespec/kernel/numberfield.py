"""Real number fields Q(theta) with exact arithmetic and certified signs.

Elements are polynomials in the generator reduced modulo its minimal
polynomial.  Zero tests are exact (coefficient comparison); signs are decided
by interval Horner evaluation on the generator's isolating interval, refining
it until the enclosure excludes zero.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import poly as P
from .algebraic import RealAlgebraic

_Q0 = Fraction(0)


class NumberField:
    """The real field Q(theta) for a real algebraic generator theta of degree >= 2."""

    def __init__(self, generator: RealAlgebraic):
        if generator.is_rational:
            raise ValueError("a number field needs an irrational generator; use Fraction for Q")
        self.generator = generator
        self.minpoly = generator.minpoly
        self.degree = len(self.minpoly) - 1
        self._lock = threading.Lock()
        self._approx = generator  # refined copy used for sign decisions
        d = self.degree
        # x^k mod minpoly for d <= k < 2d - 1
        self._red: list[tuple[Fraction, ...]] = []
        cur = [-c for c in self.minpoly[:-1]]
        for _ in range(d - 1):
            self._red.append(tuple(cur))
            nxt = [_Q0] + cur[:-1]
            top = cur[-1]
            if top:
                for j in range(d):
                    nxt[j] -= top * self.minpoly[j]
            cur = nxt

    def __repr__(self) -> str:
        return f"NumberField(Q[t]/({P.to_str(self.minpoly)}), t ~ {self.generator})"

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.generator == other.generator

    def __hash__(self) -> int:
        return hash(self.minpoly)

    # element construction -------------------------------------------------

    def element(self, coeffs: Iterable) -> "NFElement":
        c = [P.as_fraction(a) for a in coeffs]
        return NFElement(self, self.reduce(c))

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.field is not self:
                raise ValueError("element of a different field")
            return value
        return NFElement(self, (P.as_fraction(value),) + (_Q0,) * (self.degree - 1))

    def gen(self) -> "NFElement":
        return self.element([0, 1])

    def zero(self) -> "NFElement":
        return self(0)

    def one(self) -> "NFElement":
        return self(1)

    def reduce(self, c: Sequence[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        out = list(c[:d]) + [_Q0] * max(0, d - len(c))
        for k in range(d, len(c)):
            a = c[k]
            if not a:
                continue
            if k - d < len(self._red):
                row = self._red[k - d]
            else:
                row = P.rem(P.substitute_power((Fraction(0), Fraction(1)), k), self.minpoly)
                row = tuple(row) + (_Q0,) * (d - len(row))
            for j in range(d):
                if row[j]:
                    out[j] += a * row[j]
        return tuple(out)

    # sign decision ------------------------------------------------------

    def sign_of(self, c: Sequence[Fraction]) -> int:
        nz = [i for i, a in enumerate(c) if a]
        if not nz:
            return 0
        if nz == [0]:
            return 1 if c[0] > 0 else -1
        g = self._approx
        while True:
            lo, hi = P.interval_eval(c, g.lo, g.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            g = g.halve()
            with self._lock:
                if g.width < self._approx.width:
                    self._approx = g

    def approx(self, c: Sequence[Fraction]) -> float:
        g = self._approx.refine(Fraction(1, 1 << 60))
        lo, hi = P.interval_eval(c, g.lo, g.hi)
        return float((lo + hi) / 2)

    def to_real_algebraic(self, c: Sequence[Fraction]) -> RealAlgebraic:
        """The element as a standalone real algebraic number."""
        if all(a == 0 for a in c[1:]):
            return RealAlgebraic.from_rational(c[0])
        mp = _charpoly_of_element(self, tuple(c))
        cands = P.factor(mp)
        g = self._approx
        while True:
            lo, hi = P.interval_eval(c, g.lo, g.hi)
            hits = [(q, P.count_roots(q, lo, hi)) for q, _ in cands]
            hits = [h for h in hits if h[1]]
            if len(hits) == 1 and hits[0][1] == 1:
                q = hits[0][0]
                if len(q) == 2:
                    return RealAlgebraic.from_rational(-q[0])
                return RealAlgebraic(q, lo, hi)
            g = g.halve()


def _charpoly_of_element(field: NumberField, c: tuple) -> P.Poly:
    # characteristic polynomial of multiplication-by-element on the power basis
    from .linalg import char_poly_of_rows

    d = field.degree
    rows = [[_Q0] * d for _ in range(d)]
    for j in range(d):
        # column j holds the coordinates of element * theta^j
        img = field.reduce(P.mul(P.poly(c), tuple([_Q0] * j + [Fraction(1)])))
        for i in range(d):
            rows[i][j] = img[i]
    return char_poly_of_rows(rows)


class NFElement:
    """Element of a real number field."""

    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, c: tuple):
        self.field = field
        self.c = c

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixed number fields")
            return other.c
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (_Q0,) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a + b for a, b in zip(self.c, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a - b for a, b in zip(self.c, o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(b - a for a, b in zip(self.c, o)))

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return NFElement(self.field, (_Q0,) * self.field.degree)
            return NFElement(self.field, tuple(a * other for a in self.c))
        if not isinstance(other, NFElement):
            return NotImplemented
        a, b = self.c, other.c
        out = [_Q0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
        return NFElement(self.field, self.field.reduce(out))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        p = P.poly(self.c)
        if not p:
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = P.ext_gcd(p, self.field.minpoly)
        if len(g) != 1:
            raise AssertionError("minimal polynomial is not irreducible")
        return NFElement(self.field, self.field.reduce(list(s)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, NFElement):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __bool__(self) -> bool:
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == tuple(o)

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def sign(self) -> int:
        return self.field.sign_of(self.c)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return self.field.approx(self.c)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def to_real_algebraic(self) -> RealAlgebraic:
        return self.field.to_real_algebraic(self.c)

    def __repr__(self) -> str:
        terms = []
        for i, a in enumerate(self.c):
            if a:
                terms.append(str(a) if i == 0 else f"{a}*t^{i}" if i > 1 else f"{a}*t")
        return f"<{' + '.join(terms) or '0'} in Q(t), ~{float(self):.6g}>"

    def __str__(self) -> str:
        return f"{float(self):.10g}"


def sign(x) -> int:
    """Exact sign of a Fraction, int, NFElement or RealAlgebraic."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    return x.sign()


def algebraic_sign(expr: Sequence, alpha) -> int:
    """Sign of the rational polynomial ``expr`` (constant term first) evaluated at ``alpha``."""
    expr = P.poly(expr)
    alpha = RealAlgebraic.coerce(alpha)
    if alpha.is_rational:
        v = P.evaluate(expr, alpha.lo)
        return (v > 0) - (v < 0)
    return field_of(alpha).element(expr).sign()


_FIELDS: dict = {}
_FIELDS_LOCK = threading.Lock()


def field_of(alpha: RealAlgebraic) -> NumberField:
    """Shared NumberField for a generator (cached so equal generators share one field)."""
    key = (alpha.minpoly, alpha.lo, alpha.hi)
    with _FIELDS_LOCK:
        F = _FIELDS.get(key)
        if F is None:
            for k, cand in _FIELDS.items():
                if k[0] == alpha.minpoly and cand.generator == alpha:
                    F = cand
                    break
            if F is None:
                F = NumberField(alpha)
            _FIELDS[key] = F
        return F


# ---------------------------------------------------------------------------
# composita

def _poly_in_field_eval(p: P.Poly, x):
    acc = x.field.zero() if isinstance(x, NFElement) else Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_gcd_over_field(a: list, b: list, field: NumberField) -> list:
    """Monic gcd of polynomials with NFElement coefficients (constant first)."""
    def trim(p):
        p = list(p)
        while p and not p[-1]:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            coef = r[-1] / b[-1]
            shift = len(r) - len(b)
            for j in range(len(b)):
                r[shift + j] = r[shift + j] - coef * b[j]
            r = trim(r)
        a, b = b, r
    lead = a[-1]
    return [x / lead for x in a]


def _membership_relation(theta: RealAlgebraic, beta: RealAlgebraic):
    """Try to write beta as a rational polynomial in theta via an integer relation,
    verified exactly.  Returns coefficients or None."""
    import mpmath

    d = theta.degree
    with mpmath.workdps(60 + 12 * d):
        t = theta.refine(Fraction(1, 1 << (mpmath.mp.prec + 10)))
        b = beta.refine(Fraction(1, 1 << (mpmath.mp.prec + 10)))
        tv = mpmath.mpf(t.lo.numerator) / t.lo.denominator
        bv = mpmath.mpf(b.lo.numerator) / b.lo.denominator
        vec = [bv] + [tv ** j for j in range(d)]
        try:
            rel = mpmath.pslq(vec, maxcoeff=10 ** 12, maxsteps=20000)
        except Exception:
            rel = None
    if not rel or rel[0] == 0:
        return None
    coeffs = [Fraction(-r, rel[0]) for r in rel[1:]]
    F = field_of(theta)
    e = F.element(coeffs)
    # exact verification: minpoly of beta vanishes at e, and e is the designated root
    if _poly_in_field_eval(beta.minpoly, e):
        return None
    if e.to_real_algebraic() != beta:
        return None
    return coeffs


@lru_cache(maxsize=256)
def _compositum_cached(theta: RealAlgebraic, beta: RealAlgebraic):
    if beta.is_rational:
        return theta, None, None
    coeffs = _membership_relation(theta, beta)
    if coeffs is not None:
        return theta, None, tuple(coeffs)
    k = 1
    while True:
        kb = beta * k
        R = P.sum_poly(theta.minpoly, kb.minpoly)
        if P.is_squarefree(R):
            break
        k = -k if k > 0 else -k + 1
    new = theta + kb
    F = field_of(new)
    T = F.gen()
    # beta is the common root of beta.minpoly(y) and theta.minpoly(T - k y)
    lin = [T, F(-k)]  # T - k*y
    acc: list = []
    for c in reversed(theta.minpoly):
        # acc = acc * lin + c
        prod = [F.zero()] * (len(acc) + 1) if acc else []
        for i, a in enumerate(acc):
            prod[i] = prod[i] + a * lin[0]
            prod[i + 1] = prod[i + 1] + a * lin[1]
        if not prod:
            prod = [F(c)]
        else:
            prod[0] = prod[0] + c
        acc = prod
    g = _poly_gcd_over_field([F(c) for c in beta.minpoly], acc, F)
    if len(g) != 2:
        raise AssertionError("compositum: gcd is not linear")
    b_elem = -g[0]
    theta_elem = T - b_elem * k
    return new, tuple(theta_elem.c), tuple(b_elem.c)


def compositum(gens: Sequence) -> tuple[NumberField | None, list]:
    """Smallest real field containing all the given real algebraic numbers.

    Returns (field, images) where images[i] is gens[i] as an element of the field
    (a Fraction when the field is Q, i.e. ``field is None``).
    """
    gens = [RealAlgebraic.coerce(g) for g in gens]
    theta: RealAlgebraic | None = None
    # images as coefficient tuples in the current generator; rationals kept as Fraction
    images: list = []
    for g in gens:
        if g.is_rational:
            images.append(g.lo)
            continue
        if theta is None:
            theta = g
            images.append((Fraction(0), Fraction(1)) + (_Q0,) * (g.degree - 2))
            continue
        new, theta_img, b_img = _compositum_cached(theta, g)
        if theta_img is None:
            # g already lies in Q(theta)
            images.append(tuple(b_img) if b_img is not None else g.lo)
            continue
        F = field_of(new)
        te = F.element(theta_img)
        old = field_of(theta)
        moved = []
        for im in images:
            if isinstance(im, Fraction):
                moved.append(im)
            else:
                moved.append(tuple(_poly_in_field_eval(P.poly(im), te).c))
        images = moved
        images.append(tuple(b_img))
        theta = new
        del old
    if theta is None:
        return None, images
    F = field_of(theta)
    return F, [im if isinstance(im, Fraction) else F.element(im) for im in images]
