"""Exponential-polynomial sequences h(n, m) = sum_p c_p u^n v^m n^s m^t.

Each base is stored in polar form (modulus, turn) with the angle 2 pi * turn.
Turns are rational in the exact mode, so every value lies in a cyclotomic
field and signs are decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import (ArityMismatch, CounterexampleCandidate, IdenticallyZero, InputError,
                      NotConjugationClosed, PositivityViolated, ZeroAngleTerm, ZeroSequence)
from ..kernel.poly import as_fraction
from . import intervals as I
from .cyclotomic import CertifiedValue, certified_sum

DEFAULT_WIDTH = Fraction(1, 1 << 64)


@dataclass(frozen=True)
class ExpPolyTerm:
    re: Fraction
    im: Fraction
    u_mod: Fraction
    u_turn: Fraction
    v_mod: Fraction | None = None
    v_turn: Fraction | None = None
    s: int = 0
    t: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))
        object.__setattr__(self, "u_mod", as_fraction(self.u_mod))
        object.__setattr__(self, "u_turn", as_fraction(self.u_turn) % 1)
        if self.u_mod <= 0:
            raise InputError("u_mod must be positive")
        if self.s < 0:
            raise InputError("s must be nonnegative")
        two = self.v_mod is not None
        if two != (self.v_turn is not None) or two != (self.t is not None):
            raise InputError("v_mod, v_turn and t must be given together")
        if two:
            object.__setattr__(self, "v_mod", as_fraction(self.v_mod))
            object.__setattr__(self, "v_turn", as_fraction(self.v_turn) % 1)
            if self.v_mod <= 0:
                raise InputError("v_mod must be positive")
            if self.t < 0:
                raise InputError("t must be nonnegative")

    @property
    def arity(self) -> int:
        return 1 if self.v_mod is None else 2

    @property
    def key(self) -> tuple:
        """The signature p = (u, v, s, t) identifying the term."""
        return (self.u_mod, self.u_turn, self.v_mod, self.v_turn, self.s, self.t)

    @property
    def modulus_key(self) -> tuple:
        """|p| = (|u|, |v|, s, t), compared lexicographically."""
        if self.arity == 1:
            return (self.u_mod, self.s)
        return (self.u_mod, self.v_mod, self.s, self.t)

    def conjugate(self) -> "ExpPolyTerm":
        vt = None if self.v_turn is None else (-self.v_turn) % 1
        return ExpPolyTerm(self.re, -self.im, self.u_mod, (-self.u_turn) % 1, self.v_mod, vt, self.s, self.t)

    def with_coeff(self, re, im) -> "ExpPolyTerm":
        return ExpPolyTerm(re, im, self.u_mod, self.u_turn, self.v_mod, self.v_turn, self.s, self.t)

    def magnitude(self, n: int, m: int = 0) -> Fraction:
        """Real factor u_mod^n v_mod^m n^s m^t, with 0^0 = 1."""
        r = self.u_mod ** n * Fraction(n) ** self.s
        if self.arity == 2:
            r *= self.v_mod ** m * Fraction(m) ** self.t
        return r

    def turn_at(self, n: int, m: int = 0) -> Fraction:
        x = self.u_turn * n
        if self.arity == 2:
            x += self.v_turn * m
        return x % 1

    def abs_coeff_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def to_json(self) -> dict:
        out = {"re": str(self.re), "im": str(self.im), "u_mod": str(self.u_mod), "u_turn": str(self.u_turn), "s": self.s}
        if self.arity == 2:
            out.update({"v_mod": str(self.v_mod), "v_turn": str(self.v_turn), "t": self.t})
        return out

    @classmethod
    def from_json(cls, d: dict) -> "ExpPolyTerm":
        two = "v_mod" in d
        return cls(d.get("re", 0), d.get("im", 0), d["u_mod"], d.get("u_turn", 0),
                   d["v_mod"] if two else None, d.get("v_turn", 0) if two else None,
                   int(d.get("s", 0)), int(d.get("t", 0)) if two else None)


class ExpPoly:
    """A conjugation-closed finite sum of terms with distinct signatures."""

    def __init__(self, terms: Iterable[ExpPolyTerm], arity: int | None = None, check_conjugation: bool = True):
        terms = list(terms)
        if arity is None:
            arity = terms[0].arity if terms else 1
        if arity not in (1, 2):
            raise ArityMismatch("arity must be 1 or 2")
        merged: dict = {}
        for t in terms:
            if t.arity != arity:
                raise ArityMismatch(f"term of arity {t.arity} in an ExpPoly of arity {arity}")
            if t.key in merged:
                o = merged[t.key]
                merged[t.key] = o.with_coeff(o.re + t.re, o.im + t.im)
            else:
                merged[t.key] = t
        self.arity = arity
        self.terms = tuple(sorted((t for t in merged.values() if t.re or t.im),
                                  key=lambda t: tuple(-1 if x is None else x for x in t.key)))
        if check_conjugation:
            self._check_conjugation()

    def _check_conjugation(self):
        index = {t.key: t for t in self.terms}
        for t in self.terms:
            c = t.conjugate()
            o = index.get(c.key)
            if o is None or o.re != c.re or o.im != c.im:
                raise NotConjugationClosed(f"term {t.to_json()} lacks its conjugate partner")

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, ExpPoly) and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, self.terms))

    @property
    def turns_rational(self) -> bool:
        return True

    def order(self) -> int:
        """lcm of all turn denominators: the period of the rotation part."""
        N = 1
        for t in self.terms:
            N = math.lcm(N, t.u_turn.denominator)
            if t.v_turn is not None:
                N = math.lcm(N, t.v_turn.denominator)
        return N

    def to_json(self) -> dict:
        return {"arity": self.arity, "terms": [t.to_json() for t in self.terms]}

    @classmethod
    def from_json(cls, d: dict) -> "ExpPoly":
        terms = [ExpPolyTerm.from_json(x) for x in d.get("terms", [])]
        return cls(terms, int(d.get("arity", terms[0].arity if terms else 1)))


def term(c, u_mod, u_turn=0, s=0, v_mod=None, v_turn=None, t=None) -> ExpPolyTerm:
    """Convenience constructor; c may be a rational or a (re, im) pair."""
    re, im = (c if isinstance(c, tuple) else (c, 0))
    if v_mod is not None:
        v_turn = 0 if v_turn is None else v_turn
        t = 0 if t is None else t
    return ExpPolyTerm(re, im, u_mod, u_turn, v_mod, v_turn, s, t)


def cos_pair(amplitude, u_mod, u_turn, s=0, v_mod=None, v_turn=None, t=None) -> list[ExpPolyTerm]:
    """amplitude * |u|^n ... * cos(2 pi (n u_turn + m v_turn)) as a conjugate pair."""
    a = as_fraction(amplitude) / 2
    vt = None if v_mod is None else (v_turn or 0)
    vt_c = None if v_mod is None else -(v_turn or 0)
    return [term(a, u_mod, u_turn, s, v_mod, vt, t), term(a, u_mod, -as_fraction(u_turn), s, v_mod, vt_c, t)]


# ---------------------------------------------------------------------------
# evaluation


def _check_args(h: ExpPoly, n: int, m: int | None):
    if n < 0 or (m is not None and m < 0):
        raise InputError("evaluation points must be nonnegative")
    if (h.arity == 2) != (m is not None):
        raise ArityMismatch(f"ExpPoly of arity {h.arity} evaluated with {1 if m is None else 2} arguments")


def evaluate(h: ExpPoly, n: int, m: int | None = None, width: Fraction = DEFAULT_WIDTH,
             bits: int = 128) -> CertifiedValue:
    """Certified value of h(n[, m]); exact whenever the cyclotomic value is rational."""
    _check_args(h, n, m)
    mm = 0 if m is None else m
    entries = []
    for t in h.terms:
        r = t.magnitude(n, mm)
        entries.append((t.re * r, t.im * r, t.turn_at(n, mm)))
    return certified_sum(entries, width, bits)


# the name used by the CLI and the docs
eval_exppoly = evaluate


# ---------------------------------------------------------------------------
# dominant signature


@dataclass(frozen=True)
class DominantSignature:
    beta: Fraction
    gamma: Fraction | None
    a: int
    b: int | None
    plus_terms: tuple

    def as_tuple(self) -> tuple:
        if self.gamma is None:
            return (self.beta, self.a)
        return (self.beta, self.gamma, self.a, self.b)

    def normalizer(self, n: int, m: int = 0) -> Fraction:
        r = self.beta ** n * Fraction(n) ** self.a
        if self.gamma is not None:
            r *= self.gamma ** m * Fraction(m) ** self.b
        return r

    def to_json(self) -> dict:
        out = {"beta": str(self.beta), "a": self.a, "plus_terms": [t.to_json() for t in self.plus_terms]}
        if self.gamma is not None:
            out.update({"gamma": str(self.gamma), "b": self.b})
        return out


def dominant_signature(h: ExpPoly) -> DominantSignature:
    if not h.terms:
        raise ZeroSequence("the ExpPoly is identically zero")
    top = max(t.modulus_key for t in h.terms)
    plus = tuple(t for t in h.terms if t.modulus_key == top)
    if h.arity == 1:
        return DominantSignature(top[0], None, top[1], None, plus)
    return DominantSignature(top[0], top[1], top[2], top[3], plus)


def split_dominant(h: ExpPoly) -> tuple[ExpPoly, ExpPoly]:
    """(h+, h-) with h+ the S+ part."""
    sig = dominant_signature(h)
    keys = {t.key for t in sig.plus_terms}
    plus = ExpPoly([t for t in h.terms if t.key in keys], h.arity)
    minus = ExpPoly([t for t in h.terms if t.key not in keys], h.arity)
    return plus, minus


# ---------------------------------------------------------------------------
# region sampling


def _isqrt_ceil_log_sq(n: int) -> int:
    """Least integer m with (log n)^2 <= m."""
    if n <= 1:
        return 0
    import mpmath
    with mpmath.workdps(40):
        v = mpmath.log(n) ** 2
        m = int(mpmath.ceil(v))
        # guard against the rounding of an exact integer value (only n = 1 has one)
        return m


def _floor_power(n: int, eps: Fraction) -> int:
    """Greatest integer m with m <= n^eps, decided by m^q <= n^p."""
    p, q = eps.numerator, eps.denominator
    target = n ** p
    lo, hi = 0, 1
    while hi ** q <= target:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** q <= target:
            lo = mid
        else:
            hi = mid
    return lo


def region_points(eps0: Fraction, n_max: int, n_min: int = 1) -> Iterable[tuple[int, int]]:
    """All (n, m) with (log n)^2 <= m <= n^eps0 and n_min <= n <= n_max (natural log)."""
    for n in range(max(1, n_min), n_max + 1):
        lo = _isqrt_ceil_log_sq(n)
        hi = _floor_power(n, eps0)
        for m in range(lo, hi + 1):
            yield n, m


def sample_region(eps0: Fraction, n_max: int, max_n_values: int = 400, max_m_per_n: int = 16) -> list[tuple[int, int]]:
    """Deterministic subsample of the region: every n up to 64, then a spread grid, capped per row."""
    ns = [n for n in range(1, min(n_max, 64) + 1)]
    if n_max > 64:
        k = max(2, max_n_values - len(ns))
        step = (n_max - 64) / k
        ns += sorted({min(n_max, 64 + max(1, round(step * (j + 1)))) for j in range(k)})
    pts = []
    for n in sorted(set(ns)):
        lo = _isqrt_ceil_log_sq(n)
        hi = _floor_power(n, eps0)
        if lo > hi:
            continue
        ms = list(range(lo, hi + 1))
        if len(ms) > max_m_per_n:
            idx = {round(j * (len(ms) - 1) / (max_m_per_n - 1)) for j in range(max_m_per_n)}
            ms = [ms[j] for j in sorted(idx)]
        pts.extend((n, m) for m in ms)
    return pts


def _normalized_terms(h: ExpPoly, sig: DominantSignature, n: int, m: int):
    """Interval enclosures of c_p H_p(n,m) / (beta^n gamma^m n^a m^b), split by S+ membership."""
    iv = I.iv
    plus_keys = {t.key for t in sig.plus_terms}
    plus = iv.mpf(0)
    rest_abs = iv.mpf(0)
    rest = iv.mpf(0)
    for t in h.terms:
        mag = (I.from_fraction(t.u_mod / sig.beta) ** n) * (iv.mpf(n) ** (t.s - sig.a))
        if h.arity == 2:
            if m == 0 and t.t > 0:
                continue
            mfac = iv.mpf(m) ** (t.t - sig.b) if m > 0 else iv.mpf(1)
            mag = mag * (I.from_fraction(t.v_mod / sig.gamma) ** m) * mfac
        x = t.turn_at(n, m)
        val = mag * (I.from_fraction(t.re) * I.cos_turn(x) - I.from_fraction(t.im) * I.sin_turn(x))
        if t.key in plus_keys:
            plus += val
        else:
            rest += val
            rest_abs += mag * iv.sqrt(I.from_fraction(t.abs_coeff_sq()))
    return plus, rest, rest_abs


@dataclass
class RegionReport:
    signature: DominantSignature
    eps0: Fraction
    n_max: int
    samples: int
    ratio_lo: Fraction | None
    ratio_hi: Fraction | None
    constant: Fraction | None  # empirical C with C^-1 <= ratio <= C
    step_bound: Fraction | None  # observed D in max{h(n+1,m), h(n,m+1)} <= D h(n,m)
    envelope: list = field(default_factory=list)  # (n, upper bound of the S- remainder)
    envelope_decreasing: bool = True
    max_width: Fraction = Fraction(0)
    notes: list = field(default_factory=list)

    @property
    def bracket_finite(self) -> bool:
        return self.samples == 0 or (self.ratio_lo is not None and self.ratio_lo > 0)

    def to_json(self) -> dict:
        return {
            "signature": self.signature.to_json(), "eps0": str(self.eps0), "n_max": self.n_max,
            "samples": self.samples,
            "ratio_lo": None if self.ratio_lo is None else str(self.ratio_lo),
            "ratio_hi": None if self.ratio_hi is None else str(self.ratio_hi),
            "C": None if self.constant is None else str(self.constant),
            "D": None if self.step_bound is None else str(self.step_bound),
            "envelope_decreasing": self.envelope_decreasing,
            "max_width": str(self.max_width), "notes": list(self.notes),
        }


def _ratio(h, sig, n, m):
    plus, rest, rest_abs = _normalized_terms(h, sig, n, m)
    return plus + rest, rest_abs


def region_bound_check(h: ExpPoly, eps0=Fraction(1, 4), n_max: int = 10 ** 4, bits: int = 128,
                       width: Fraction = DEFAULT_WIDTH, D: Fraction | None = None,
                       points: Sequence[tuple[int, int]] | None = None,
                       exhaustive: bool = False) -> RegionReport:
    """Sample h / (beta^n gamma^m n^a m^b) over the region (log n)^2 <= m <= n^eps0.

    Raises PositivityViolated at the first sample where h(n, m) <= 0, and at the
    first sample breaking a user-supplied step bound D.
    """
    if h.arity != 2:
        raise ArityMismatch("the region check needs a two-variable ExpPoly")
    eps0 = as_fraction(eps0)
    if not 0 < eps0 < 1:
        raise InputError("eps0 must lie in (0, 1)")
    sig = dominant_signature(h)
    if points is None:
        points = list(region_points(eps0, n_max)) if exhaustive else sample_region(eps0, n_max)
    lo_all = hi_all = None
    d_obs = None
    env: dict = {}
    wmax = Fraction(0)
    count = 0
    with I.precision(bits):
        for n, m in points:
            if sig.b and m == 0:
                continue  # the normalizer vanishes
            r, rest_abs = _ratio(h, sig, n, m)
            lo, hi = I.endpoints(r)
            wmax = max(wmax, hi - lo)
            if hi <= 0 or lo <= 0:
                val = evaluate(h, n, m, width, bits)
                if val.sign() <= 0:
                    raise PositivityViolated((n, m), (val.lo, val.hi))
            count += 1
            lo_all = lo if lo_all is None else min(lo_all, lo)
            hi_all = hi if hi_all is None else max(hi_all, hi)
            env[n] = max(env.get(n, Fraction(0)), I.endpoints(rest_abs)[1])
            if lo <= 0:
                continue  # positive, but too close to 0 for an interval quotient
            # bounded-ratio condition, sampled
            r1, _ = _ratio(h, sig, n + 1, m)
            r2, _ = _ratio(h, sig, n, m + 1)
            f1 = I.from_fraction(sig.beta) * r1 / r * (I.iv.mpf(n + 1) / n) ** sig.a
            f2 = I.from_fraction(sig.gamma) * r2 / r
            if sig.b and m > 0:
                f2 = f2 * (I.iv.mpf(m + 1) / m) ** sig.b
            step = max(I.endpoints(f1)[1], I.endpoints(f2)[1])
            d_obs = step if d_obs is None else max(d_obs, step)
            if D is not None and step > D:
                # certify with exact values before reporting
                h0 = evaluate(h, n, m, width, bits).midpoint()
                h1 = evaluate(h, n + 1, m, width, bits).midpoint()
                h2 = evaluate(h, n, m + 1, width, bits).midpoint()
                if max(h1, h2) > D * h0:
                    raise PositivityViolated((n, m), (h0, max(h1, h2)))
    env_list = sorted(env.items())
    decreasing = True
    if env_list and any(v > 0 for _, v in env_list):
        tail = [v for _, v in env_list]
        for i in range(len(tail) - 2, -1, -1):
            tail[i] = max(tail[i], tail[i + 1])
        decreasing = tail[-1] < tail[0] or len(tail) == 1
    notes = []
    if count == 0:
        notes.append("the sampled region is empty")
    const = None
    if lo_all is not None and lo_all > 0:
        const = max(hi_all, 1 / lo_all)
    return RegionReport(sig, eps0, n_max, count, lo_all, hi_all, const, d_obs, env_list, decreasing, wmax, notes)


# ---------------------------------------------------------------------------
# one-variable sign lemma


def _plus_data(data) -> list[tuple[Fraction, Fraction, Fraction]]:
    """(re, im, turn) triples of C(n) = sum c_p exp(i theta_p n)."""
    if isinstance(data, ExpPoly):
        if data.arity != 1:
            raise ArityMismatch("the sign search works on one-variable data")
        sig = dominant_signature(data)
        return [(t.re, t.im, t.u_turn) for t in sig.plus_terms]
    out = []
    for item in data:
        if isinstance(item, ExpPolyTerm):
            out.append((item.re, item.im, item.u_turn))
        else:
            re, im, turn = item
            out.append((as_fraction(re), as_fraction(im), as_fraction(turn) % 1))
    return out


def _check_plus_data(entries):
    if not entries:
        raise IdenticallyZero("no coefficient data")
    for re, im, turn in entries:
        if turn == 0:
            raise ZeroAngleTerm("a term has angle 0")
    index = {}
    for re, im, turn in entries:
        index[turn] = index.get(turn, (Fraction(0), Fraction(0)))
        index[turn] = (index[turn][0] + re, index[turn][1] + im)
    for turn, (re, im) in index.items():
        other = index.get((-turn) % 1)
        if other is None or other != (re, -im):
            raise NotConjugationClosed(f"the turn {turn} lacks its conjugate partner")
    return index


def C_value(entries, n: int, width: Fraction = DEFAULT_WIDTH) -> CertifiedValue:
    return certified_sum([(re, im, turn * n) for re, im, turn in entries], width)


@dataclass(frozen=True)
class NegativeValue:
    m: int
    value: CertifiedValue
    order: int

    def to_json(self) -> dict:
        return {"m": self.m, "value": self.value.to_json(), "order": self.order}


def negative_value_search(data, width: Fraction = DEFAULT_WIDTH) -> NegativeValue:
    """Least m in one period with C(m) < 0, for conjugation-closed data with all angles nonzero."""
    entries = _plus_data(data)
    index = _check_plus_data(entries)
    entries = [(re, im, t) for t, (re, im) in sorted(index.items())]
    order = 1
    for _, _, t in entries:
        order = math.lcm(order, t.denominator)
    values = [C_value(entries, n, width) for n in range(order)]
    if all(v.sign() == 0 for v in values):
        raise IdenticallyZero("C vanishes on a full period")
    for n, v in enumerate(values):
        if v.sign() < 0:
            return NegativeValue(n, v, order)
    raise CounterexampleCandidate(f"no negative value of C within the period {order}")


@dataclass(frozen=True)
class CesaroReport:
    order: int
    period_sum: Fraction | None
    partial_sums: tuple  # (lo, hi) per l = 0..order-1
    bound: Fraction  # upper end of sum_p 2|c_p| / |1 - exp(i theta_p)|

    @property
    def passed(self) -> bool:
        return self.period_sum == 0 and all(-self.bound <= lo and hi <= self.bound for lo, hi in self.partial_sums)


def cesaro_check(data, width: Fraction = DEFAULT_WIDTH) -> CesaroReport:
    """Partial sums of C(n) over one period: exact zero at the period, bounded throughout."""
    entries = _plus_data(data)
    _check_plus_data(entries)
    order = 1
    for _, _, t in entries:
        order = math.lcm(order, t.denominator)
    partial = []
    acc: list = []
    for n in range(order):
        acc.extend((re, im, t * n) for re, im, t in entries)
        v = certified_sum(acc, width)
        partial.append((v.lo, v.hi))
    period = certified_sum(acc, width)
    with I.precision(128):
        b = I.iv.mpf(0)
        for re, im, t in entries:
            # |1 - exp(2 pi i t)| = 2 |sin(pi t)|
            b += I.iv.sqrt(I.from_fraction(re * re + im * im)) / abs(I.sin_turn(t / 2))
        bound = I.endpoints(b)[1]
    return CesaroReport(order, period.exact, tuple(partial), bound)


# ---------------------------------------------------------------------------
# declared growth-rate diagnostic


@dataclass(frozen=True)
class DeclaredRateReport:
    lam: Fraction
    beta_matches: bool
    gamma_is_one: bool
    violations: tuple  # sampled (n, m) breaking the declared bounds

    @property
    def consistent(self) -> bool:
        return self.beta_matches and self.gamma_is_one and not self.violations


def declared_rate_diagnostic(h: ExpPoly, lam, delta=None, D_delta=None, n_max: int = 60,
                             bits: int = 128) -> DeclaredRateReport:
    """Compare the dominant signature with a declared lambda (expected beta = lambda, gamma = 1).

    With delta and D_delta supplied, also sample D^-1 delta^n <= h(n,m)/lambda^n <= D delta^-n for n >= m >= 0.
    """
    if h.arity != 2:
        raise ArityMismatch("the declared-rate diagnostic concerns two-variable sequences")
    lam = as_fraction(lam)
    sig = dominant_signature(h)
    bad = []
    if delta is not None and D_delta is not None:
        delta, D_delta = as_fraction(delta), as_fraction(D_delta)
        for n in range(n_max + 1):
            for m in range(n + 1):
                v = evaluate(h, n, m, bits=bits)
                x = v.midpoint() / lam ** n
                if not (delta ** n / D_delta <= x <= D_delta / delta ** n):
                    bad.append((n, m))
    return DeclaredRateReport(lam, sig.beta == lam, sig.gamma == 1, tuple(bad))
