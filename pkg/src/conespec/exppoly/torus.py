"""Closures of rotation orbits on tori, uniform visit bounds, and the lower
bound for the limit function q on the closure group.

With rational turns the orbit closure of n -> n * theta is the finite cyclic
group generated by theta, so recurrence and visit times are computed by
enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import EmptyTarget, InputError
from ..kernel.poly import as_fraction
from .core import DEFAULT_WIDTH, ExpPoly, dominant_signature
from .cyclotomic import certified_sum


def _norm_turns(turns) -> tuple:
    return tuple(as_fraction(t) % 1 for t in turns)


@dataclass(frozen=True)
class TorusClosure:
    generators: tuple
    order: int

    def theta(self, n: int) -> tuple:
        return tuple((n * t) % 1 for t in self.generators)

    def elements(self) -> list[tuple]:
        return [self.theta(j) for j in range(self.order)]

    def index_of(self, element: Sequence) -> int:
        element = _norm_turns(element)
        for j in range(self.order):
            if self.theta(j) == element:
                return j
        raise InputError(f"{element} is not in the closure group")

    def return_times(self, count: int) -> list[int]:
        return [self.order * k for k in range(1, count + 1)]

    def to_json(self) -> dict:
        return {"generators": [str(t) for t in self.generators], "order": self.order,
                "return_times": self.return_times(3)}


def torus_closure(turns: Iterable) -> TorusClosure:
    turns = _norm_turns(turns)
    order = 1
    for t in turns:
        order = math.lcm(order, t.denominator)
    return TorusClosure(turns, order)


@dataclass(frozen=True)
class NumericRecurrence:
    """Heuristic return time for turns that are treated as irrational; not certified."""

    return_time: int | None
    error: float
    tolerance: float
    certified: bool = False


def torus_closure_numeric(turns: Sequence[float], tol: float = 1e-3, max_time: int = 10 ** 6) -> NumericRecurrence:
    """Least q <= max_time with every q * turn within tol of an integer (floating point, non-certified)."""
    xs = [float(t) % 1.0 for t in turns]
    best = (None, 1.0)
    for q in range(1, max_time + 1):
        err = max((abs(q * x - round(q * x)) for x in xs), default=0.0)
        if err < best[1]:
            best = (q, err)
        if err < tol:
            return NumericRecurrence(q, err, tol)
    return NumericRecurrence(None, best[1], tol)


def visit_bound(turns, target, turns2=None) -> int:
    """Least B such that from every element z some shift R(n, m), n, m <= B, lands z in the target.

    One variable: the group is Z/order, target given by indices j (meaning j * theta)
    or by explicit elements.  Two variables: the product of the two closure groups,
    target given by index pairs.
    """
    G1 = torus_closure(turns)
    if turns2 is None:
        cells = set()
        for x in target:
            cells.add(x % G1.order if isinstance(x, int) else G1.index_of(x))
        if not cells:
            raise EmptyTarget("the target is empty")
        return max(min((c - z) % G1.order for c in cells) for z in range(G1.order))
    G2 = torus_closure(turns2)
    cells = set()
    for x in target:
        i, j = x
        i = i % G1.order if isinstance(i, int) else G1.index_of(i)
        j = j % G2.order if isinstance(j, int) else G2.index_of(j)
        cells.add((i, j))
    if not cells:
        raise EmptyTarget("the target is empty")
    worst = 0
    for z1 in range(G1.order):
        for z2 in range(G2.order):
            best = min(max((c1 - z1) % G1.order, (c2 - z2) % G2.order) for c1, c2 in cells)
            worst = max(worst, best)
    return worst


@dataclass(frozen=True)
class QBoundReport:
    orders: tuple
    A1: Fraction
    target_size: int
    B_U: int
    D: Fraction
    bound: Fraction
    q_min: Fraction  # lower end of the enclosure of min q
    q_max: Fraction

    @property
    def passed(self) -> bool:
        return self.q_min > self.bound

    def to_json(self) -> dict:
        return {"orders": list(self.orders), "A1": str(self.A1), "target_size": self.target_size,
                "B_U": self.B_U, "D": str(self.D), "bound": str(self.bound),
                "q_min": str(self.q_min), "q_max": str(self.q_max), "passed": self.passed}


def q_values(h: ExpPoly, width: Fraction = DEFAULT_WIDTH) -> dict:
    """q on the closure group: C(i, j) = sum_{S+} c_p exp(2 pi i (i theta_p + j phi_p))."""
    sig = dominant_signature(h)
    th = [t.u_turn for t in sig.plus_terms]
    G1 = torus_closure(th)
    if h.arity == 1:
        return {(i,): certified_sum([(t.re, t.im, t.u_turn * i) for t in sig.plus_terms], width)
                for i in range(G1.order)}
    G2 = torus_closure([t.v_turn for t in sig.plus_terms])
    return {(i, j): certified_sum([(t.re, t.im, t.u_turn * i + t.v_turn * j) for t in sig.plus_terms], width)
            for i in range(G1.order) for j in range(G2.order)}


def q_lower_bound_check(h: ExpPoly, D, A1=None, width: Fraction = DEFAULT_WIDTH) -> QBoundReport:
    """Check q(z) > min{1,beta}^B min{gamma,beta}^B D^(-2B) A1 on every z of the closure group.

    U is the set of cells where q > A1 (A1 defaults to half of the certified max of q) and
    B = B_U is its visit bound.  For one-variable input the gamma factor is dropped and D
    enters as D^-B.
    """
    D = as_fraction(D)
    sig = dominant_signature(h)
    qs = q_values(h, width)
    q_max = max(v.lo for v in qs.values())
    if A1 is None:
        A1 = q_max / 2
    A1 = as_fraction(A1)
    cells = [z for z, v in qs.items() if v.lo > A1]
    if not cells:
        raise EmptyTarget("q never exceeds A1")
    th = [t.u_turn for t in sig.plus_terms]
    if h.arity == 1:
        B = visit_bound(th, [z[0] for z in cells])
        bound = min(Fraction(1), sig.beta) ** B * D ** (-B) * A1
        orders = (torus_closure(th).order,)
    else:
        ph = [t.v_turn for t in sig.plus_terms]
        B = visit_bound(th, cells, ph)
        bound = min(Fraction(1), sig.beta) ** B * min(sig.gamma, sig.beta) ** B * D ** (-2 * B) * A1
        orders = (torus_closure(th).order, torus_closure(ph).order)
    q_min = min(v.lo for v in qs.values())
    q_hi = max(v.hi for v in qs.values())
    return QBoundReport(orders, A1, len(cells), B, D, bound, q_min, q_hi)
