"""Exact phase-one simplex over an ordered field and the strict-feasibility
alternative built on it.

Pivoting uses Bland's smallest-index rule (entering column and, on ratio ties,
leaving basic variable), so runs are deterministic and cannot cycle.  Entries
may be ``Fraction`` or :class:`NFElement`; comparisons go through exact sign
decisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


_ZERO = Fraction(0)
_ONE = Fraction(1)


def find_nonnegative_solution(G: Sequence[Sequence], b: Sequence) -> list | None:
    """Some y >= 0 with G y = b, or None if there is none."""
    m = len(G)
    n = len(G[0]) if m else 0
    if m == 0:
        return [_ZERO] * n
    rows = []
    rhs = []
    for i in range(m):
        row = list(G[i])
        bi = b[i]
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row + [_ONE if j == i else _ZERO for j in range(m)])
        rhs.append(bi)
    total = n + m
    basis = [n + i for i in range(m)]
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [_ZERO] * total
    obj = _ZERO
    for i in range(m):
        for j in range(n):
            if rows[i][j]:
                cost[j] = cost[j] - rows[i][j]
        obj = obj - rhs[i]
    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot occur for a phase-one objective bounded below by 0
            raise AssertionError("phase-one simplex reported unboundedness")
        piv = rows[leave][enter]
        inv = 1 / piv
        rows[leave] = [x * inv for x in rows[leave]]
        rhs[leave] = rhs[leave] * inv
        for i in range(m):
            if i != leave and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
                rhs[i] = rhs[i] - f * rhs[leave]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, rows[leave])]
        obj = obj - f * rhs[leave]
        basis[leave] = enter
    # obj holds minus the phase-one objective value
    if obj != 0:
        return None
    y = [_ZERO] * n
    for i, j in enumerate(basis):
        if j < n:
            y[j] = rhs[i]
    return y


@dataclass(frozen=True)
class StrictFeasibility:
    """Outcome of deciding whether {x : A x > 0} is nonempty.

    Exactly one of ``point`` (A point > 0 componentwise) and ``weights``
    (y >= 0, sum y = 1, y^T A = 0) is set.
    """

    point: list | None
    weights: list | None

    @property
    def feasible(self) -> bool:
        return self.point is not None


def strict_feasibility(A: Sequence[Sequence], k: int) -> StrictFeasibility:
    """Decide A x > 0 for an m x k matrix A by solving both sides of Gordan's alternative.

    Route 1 looks for x with A x >= 1 (rescaling of any strict solution); route 2
    looks for a convex combination of the rows of A equal to zero.  Exactly one
    must succeed; both are solved and the disagreement case is an internal error.
    """
    m = len(A)
    # route 1: A x+ - A x- - s = 1, all variables >= 0
    G1 = [list(A[i]) + [-x for x in A[i]] + [(-_ONE if j == i else _ZERO) for j in range(m)]
          for i in range(m)]
    sol1 = find_nonnegative_solution(G1, [_ONE] * m) if m else [_ZERO] * (2 * k)
    point = None
    if sol1 is not None:
        point = [sol1[j] - sol1[k + j] for j in range(k)]
    # route 2: A^T y = 0, 1^T y = 1, y >= 0
    G2 = [[A[i][j] for i in range(m)] for j in range(k)] + [[_ONE] * m]
    sol2 = find_nonnegative_solution(G2, [_ZERO] * k + [_ONE]) if m else None
    if (point is None) == (sol2 is None):
        raise AssertionError("strict feasibility: both or neither alternative holds")
    return StrictFeasibility(point, sol2)
