"""Dense univariate polynomials over Q.

A polynomial is a tuple of :class:`fractions.Fraction` coefficients, constant
term first, with no trailing zeros (the zero polynomial is ``()``).  Arithmetic
is done here; factorization, resultants and real-root counting are delegated to
sympy's dense-polynomial routines over ``QQ``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from sympy import Poly as _SPoly
from sympy import symbols as _symbols
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import RefinementFailed
from sympy.polys.rootisolation import (
    dup_count_real_roots,
    dup_isolate_complex_roots_sqf,
    dup_isolate_real_roots_sqf,
    dup_refine_real_root,
)

Poly = tuple  # tuple[Fraction, ...], constant term first

_X, _Y = _symbols("x y")


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def poly(coeffs: Iterable) -> Poly:
    c = [as_fraction(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def is_zero(p: Poly) -> bool:
    return len(p) == 0


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def neg(p: Poly) -> Poly:
    return tuple(-a for a in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    c = as_fraction(c)
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly(out)


def power(p: Poly, k: int) -> Poly:
    result: Poly = (Fraction(1),)
    base = p
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(r) <= db:
        return (), poly(r)
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = c / lead
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] -= c * b[j]
    return poly(q), poly(r[:db])


def rem(a: Poly, b: Poly) -> Poly:
    return divmod_poly(a, b)[1]


def monic(p: Poly) -> Poly:
    if not p:
        return p
    lead = p[-1]
    return tuple(a / lead for a in p)


def gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g = monic gcd(a, b)."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    lead = r0[-1]
    return monic(r0), scale(s0, 1 / lead), scale(t0, 1 / lead)


def derivative(p: Poly) -> Poly:
    return poly(i * p[i] for i in range(1, len(p)))


def evaluate(p: Sequence, x):
    """Horner evaluation; works for any ring element ``x``."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p: Poly, q: Poly) -> Poly:
    """p(q(x))."""
    out: Poly = ()
    for c in reversed(p):
        out = add(mul(out, q), (c,) if c else ())
    return out


def substitute_power(p: Poly, k: int) -> Poly:
    """p(x^k)."""
    out = [Fraction(0)] * ((len(p) - 1) * k + 1) if p else []
    for i, c in enumerate(p):
        out[i * k] = c
    return poly(out)


def shift(p: Poly, c) -> Poly:
    """p(x - c)."""
    return compose(p, poly([-as_fraction(c), 1]))


def scale_root(p: Poly, c) -> Poly:
    """Monic polynomial whose roots are c times the roots of p (c != 0)."""
    c = as_fraction(c)
    d = len(p) - 1
    # p(x/c) * c^d
    return monic(poly(p[i] * c ** (d - i) for i in range(len(p))))


def reverse(p: Poly) -> Poly:
    """Monic polynomial whose roots are the inverses of the (nonzero) roots of p."""
    return monic(poly(reversed(p)))


def reflect(p: Poly) -> Poly:
    """Monic polynomial with roots negated: p(-x) normalized."""
    return monic(poly(a if i % 2 == 0 else -a for i, a in enumerate(p)))


def is_squarefree(p: Poly) -> bool:
    return degree(gcd(p, derivative(p))) == 0


def interval_eval(p: Sequence[Fraction], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of {p(x) : lo <= x <= hi} by interval Horner evaluation."""
    a = b = Fraction(0)
    for c in reversed(p):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a = min(prods) + c
        b = max(prods) + c
    return a, b


def to_str(p: Poly, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# sympy bridges

def _dup(p: Poly) -> list:
    return [QQ(a.numerator, a.denominator) for a in reversed(p)]


def _from_qq(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _from_spoly(P: _SPoly) -> Poly:
    return poly(Fraction(int(c.p), int(c.q)) for c in reversed(P.all_coeffs()))


def _canonical_key(p: Poly):
    return (len(p), tuple(p))


@lru_cache(maxsize=4096)
def factor(p: Poly) -> tuple[tuple[Poly, int], ...]:
    """Monic irreducible factorization over Q, sorted by (degree, coefficients)."""
    if len(p) <= 1:
        return ()
    P = _SPoly(list(reversed(p)), _X, domain=QQ)
    _, flist = P.factor_list()
    out = [(monic(_from_spoly(F)), e) for F, e in flist]
    out.sort(key=lambda fe: _canonical_key(fe[0]))
    return tuple(out)


def squarefree_part(p: Poly) -> Poly:
    return monic(divmod_poly(p, gcd(p, derivative(p)))[0])


def _bivariate(coeffs: dict) -> _SPoly:
    # keys (i, j) are exponents of (y, x)
    return _SPoly.from_dict({k: QQ(v.numerator, v.denominator) for k, v in coeffs.items() if v},
                            _Y, _X, domain=QQ)


def _resultant_y(A: dict, B: dict) -> Poly:
    R = _bivariate(A).resultant(_bivariate(B))
    if isinstance(R, _SPoly):
        return _from_spoly(R)
    return poly([Fraction(int(R.p), int(R.q))])


def _in_y(p: Poly) -> dict:
    return {(i, 0): c for i, c in enumerate(p) if c}


@lru_cache(maxsize=4096)
def sum_poly(pa: Poly, pb: Poly) -> Poly:
    """Polynomial whose roots are a + b over roots a of pa and b of pb."""
    A: dict = {}
    for i, c in enumerate(pa):
        if not c:
            continue
        for j in range(i + 1):
            # c * (x - y)^i
            key = (j, i - j)
            A[key] = A.get(key, 0) + c * comb(i, j) * (-1) ** j
    return _resultant_y(_in_y(pb), A)


@lru_cache(maxsize=4096)
def product_poly(pa: Poly, pb: Poly) -> Poly:
    """Polynomial whose roots are a * b (b a root of pb, assumed nonzero)."""
    da = len(pa) - 1
    A = {(da - i, i): c for i, c in enumerate(pa) if c}
    return _resultant_y(_in_y(pb), A)


@lru_cache(maxsize=4096)
def power_poly(pa: Poly, k: int) -> Poly:
    """Polynomial whose roots are a^k over roots a of pa."""
    B = {(0, 1): Fraction(1), (k, 0): Fraction(-1)}
    return _resultant_y(_in_y(pa), B)


# ---------------------------------------------------------------------------
# real and complex root isolation (sympy, over QQ)

@lru_cache(maxsize=4096)
def _dup_cached(p: Poly) -> tuple:
    return tuple(_dup(p))


def count_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of squarefree p in the closed interval [lo, hi]."""
    if lo > hi:
        return 0
    if len(p) == 2:
        r = -p[0] / p[1]
        return int(lo <= r <= hi)
    return dup_count_real_roots(list(_dup_cached(p)), QQ,
                                inf=QQ(lo.numerator, lo.denominator),
                                sup=QQ(hi.numerator, hi.denominator))


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals (ascending) of the real roots of squarefree p."""
    if len(p) <= 1:
        return []
    if len(p) == 2:
        r = -p[0] / p[1]
        return [(r, r)]
    return [(_from_qq(a), _from_qq(b)) for a, b in dup_isolate_real_roots_sqf(list(_dup_cached(p)), QQ)]


def refine_real_root(p: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    if hi - lo <= width:
        return lo, hi
    try:
        a, b = dup_refine_real_root(list(_dup_cached(p)), QQ(lo.numerator, lo.denominator),
                                    QQ(hi.numerator, hi.denominator), QQ,
                                    eps=QQ(width.numerator, width.denominator))
    except RefinementFailed:
        # the interval isolates one simple real root but fails the Descartes test
        # used by the refiner (nearby complex roots); bisect on exact signs instead
        return _bisect_root(p, lo, hi, width)
    a, b = _from_qq(a), _from_qq(b)
    if a > b:
        a, b = b, a
    return a, b


def _bisect_root(p: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    s_lo = evaluate(p, lo)
    if s_lo == 0:
        return lo, lo
    if evaluate(p, hi) == 0:
        return hi, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = evaluate(p, mid)
        if v == 0:
            return mid, mid
        if (v > 0) == (s_lo > 0):
            lo = mid
        else:
            hi = mid
    return lo, hi


def isolate_complex_roots(p: Poly) -> list:
    """Isolating rectangles (sympy ComplexInterval objects) for the non-real roots
    in the upper half plane of squarefree p."""
    if len(p) <= 2:
        return []
    boxes = dup_isolate_complex_roots_sqf(list(_dup_cached(p)), QQ, blackbox=True)
    return [b for b in boxes if not b.conj]
