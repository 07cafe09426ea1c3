"""Worked pullback systems and periodic-subvariety trees.

Split monomial maps (x_1, ..., x_k) -> (x_1^{q_1}, ..., x_k^{q_k}) on (P^1)^k act
diagonally on N^i with basis the classes of i-fold fiber intersections, indexed
by i-subsets of the coordinates; the eigenvalue on a subset is the product of
its exponents.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Sequence

from .cones import PolyhedralCone
from .degrees import GradedPullbackSystem, SubsystemNode
from .kernel.linalg import RationalMatrix


def monomial_system(exponents: Sequence[int], label: str = "", with_models: bool = True,
                    power: int = 1) -> GradedPullbackSystem:
    """Graded pullbacks of the split monomial map with the given exponents, iterated ``power`` times."""
    q = [int(e) ** power for e in exponents]
    k = len(q)
    pbs = []
    for i in range(k + 1):
        pbs.append(RationalMatrix.diag([prod(q[j] for j in s) for s in combinations(range(k), i)]))
    model = PolyhedralCone.orthant(k) if with_models and k >= 1 else None
    return GradedPullbackSystem(k, tuple(pbs), model, model, label or f"monomial{tuple(exponents)}")


def point_system(label: str = "point") -> GradedPullbackSystem:
    return GradedPullbackSystem(0, (RationalMatrix.identity(1),), None, None, label)


def projective_space_system(d: int, q: int) -> GradedPullbackSystem:
    """Degree-q endomorphism of P^d: multiplication by q^i on N^i."""
    pbs = tuple(RationalMatrix(((Fraction(q) ** i,),)) for i in range(d + 1))
    model = PolyhedralCone.orthant(1) if d >= 1 else None
    return GradedPullbackSystem(d, pbs, model, model, f"P{d}-degree{q}")


def identity_system(k: int) -> GradedPullbackSystem:
    return monomial_system([1] * k, label=f"identity(P1^{k})")


def swap_system(a: int, b: int) -> GradedPullbackSystem:
    """(x, y) -> (y^a, x^b) on (P^1)^2: f* swaps the fiber classes with scales a and b."""
    n1 = RationalMatrix(((Fraction(0), Fraction(b)), (Fraction(a), Fraction(0))))
    model = PolyhedralCone.orthant(2)
    return GradedPullbackSystem(2, (RationalMatrix.identity(1), n1, RationalMatrix(((Fraction(a * b),),))),
                                model, model, f"swap({a},{b})")


def _node_name(k: int, values: dict) -> str:
    return "(" + ",".join(values.get(j, "P1") for j in range(k)) + ")"


def monomial_tree(exponents: Sequence[int], period_two: bool = True) -> SubsystemNode:
    """Tree of coordinate subproducts of the split monomial map.

    A node frees a subset J of the coordinates and fixes each other coordinate
    at 0, at infinity, or (when its exponent is at least 2 and ``period_two``)
    at a point "w" of exact period 2; the node has period 2 when some coordinate
    sits at w.  The canonical parent frees the smallest fixed coordinate again.
    """
    q = [int(e) for e in exponents]
    k = len(q)

    def options(j):
        return ["0", "inf"] + (["w"] if period_two and q[j] >= 2 else [])

    def build(free: tuple, values: dict) -> SubsystemNode:
        fixed = sorted(values)
        children = []
        # fixing i in J gives a child whose canonical parent is this node exactly when i < every fixed coordinate
        for i in free:
            if fixed and i > fixed[0]:
                continue
            sub = tuple(x for x in free if x != i)
            for v in options(i):
                children.append(build(sub, {**values, i: v}))
        period = 2 if "w" in values.values() else 1
        name = _node_name(k, values) if values else "root"
        sys = monomial_system([q[j] for j in free], power=period, with_models=not values,
                              label=name)
        return SubsystemNode(name, period, sys, tuple(children))

    root = build(tuple(range(k)), {})
    return SubsystemNode("root", 1, monomial_system(q), root.children)


def swap_tree(a: int, b: int) -> SubsystemNode:
    """(x, y) -> (y^a, x^b): the curves {0} x P1 and P1 x {0} form a 2-cycle; f^2 restricts to y -> y^(ab)."""
    curve = monomial_system([a * b], with_models=False)
    fixed_pt = point_system("(0,0)")
    kids = (
        SubsystemNode("(0,P1)", 2, curve, (SubsystemNode("(0,0)", 1, fixed_pt),)),
        SubsystemNode("(P1,0)", 2, curve),
        SubsystemNode("(inf,P1)", 2, curve, (SubsystemNode("(inf,inf)", 1, point_system("(inf,inf)")),)),
        SubsystemNode("(P1,inf)", 2, curve),
    )
    return SubsystemNode("root", 1, swap_system(a, b), kids)


def gallery() -> dict:
    """Named (system, tree) pairs used by the examples and the classification checks."""
    return {
        "x2y3": (monomial_system([2, 3]), monomial_tree([2, 3])),
        "xy2": (monomial_system([1, 2]), monomial_tree([1, 2])),
        "identity": (identity_system(2), monomial_tree([1, 1])),
        "P2-degree2": (projective_space_system(2, 2), None),
        "swap23": (swap_system(2, 3), swap_tree(2, 3)),
    }
