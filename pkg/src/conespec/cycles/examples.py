"""Worked stratified models."""

from __future__ import annotations

from ..cones import PolyhedralCone
from .model import Divisor, StratifiedModel


def two_lines(embedded: bool = False) -> StratifiedModel:
    """Two lines L1, L2 meeting at a point p, with i = 1.

    The generic points eta1, eta2 carry rank-1 spaces and p a zero space.  With
    ``embedded`` the lines sit in a plane whose generic point xi has N_1 of rank 1
    and the pushforwards are the degrees (1 each).  The divisor {p} pairs to 1
    with each line class.
    """
    points = [("p", 0), ("eta1", 1), ("eta2", 1)]
    closure = [("p", "eta1"), ("p", "eta2")]
    spaces = {"p": 0, "eta1": 1, "eta2": 1}
    push = {("p", "eta1"): [], ("p", "eta2"): []}
    half_line = PolyhedralCone.orthant(1)
    cones = {"eta1": half_line, "eta2": half_line}
    pairing = (1, 1)
    if embedded:
        points.append(("xi", 2))
        closure += [("eta1", "xi"), ("eta2", "xi")]
        spaces["xi"] = 1
        push[("eta1", "xi")] = [[1]]
        push[("eta2", "xi")] = [[1]]
        cones["xi"] = half_line
        pairing = (1, 1, 1)
    divisors = [Divisor("p", frozenset({"p"}), tuple(pairing))]
    return StratifiedModel(points, closure, spaces, push, i=1, cones=cones, divisors=divisors,
                           label="two-lines-in-plane" if embedded else "two-lines")
