"""Closed polyhedral cones held in both ray and facet form.

Conversion between the two descriptions is a plain double description by
enumeration of (n-1)-subsets of constraints; the cones handled here live in
dimension at most about ten, where this is fast and easy to audit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, InconsistentCone
from ..kernel import linalg as L
from ..kernel.poly import as_fraction

Vector = tuple  # tuple[Fraction, ...]


def primitive(v: Sequence) -> Vector:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    v = [as_fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(x // g) for x in ints)


def _dedupe(vectors: Iterable[Sequence]) -> list[Vector]:
    seen = set()
    out = []
    for v in vectors:
        p = primitive(v)
        if not any(p) or p in seen:
            continue
        seen.add(p)
        out.append(p)
    out.sort()
    return out


def generators_of(constraints: Sequence[Sequence], n: int) -> tuple[list[Vector], list[Vector]]:
    """Lineality basis and extreme rays of {x : c . x >= 0 for every constraint c}."""
    C = [list(map(as_fraction, c)) for c in constraints if any(c)]
    lineality = L.nullspace(C, n) if C else L.nullspace([], n)
    lineality = [primitive(v) for v in lineality]
    k = n - len(lineality)
    if k == 0:
        return lineality, []
    lt = [list(v) for v in lineality]
    rays = []
    for subset in combinations(range(len(C)), k - 1):
        rows = [C[i] for i in subset] + lt
        if rows and L.rank(rows) != n - 1:
            continue
        ns = L.nullspace(rows, n) if rows else L.nullspace([], n)
        if len(ns) != 1:
            continue
        d = ns[0]
        vals = [L.dot(c, d) for c in C]
        if all(x >= 0 for x in vals):
            rays.append(d)
        elif all(x <= 0 for x in vals):
            rays.append([-x for x in d])
    return lineality, _dedupe(rays)


def _with_lineality(lineality, extreme) -> list[Vector]:
    out = list(extreme)
    for v in lineality:
        out.append(tuple(v))
        out.append(tuple(-x for x in v))
    return _dedupe(out)


def facets_from_rays(rays: Sequence[Sequence], n: int) -> list[Vector]:
    lin, ext = generators_of(rays, n)
    return _with_lineality(lin, ext)


def rays_from_facets(facets: Sequence[Sequence], n: int) -> list[Vector]:
    lin, ext = generators_of(facets, n)
    return _with_lineality(lin, ext)


@dataclass(frozen=True)
class PolyhedralCone:
    ambient_dim: int
    rays: tuple
    facets: tuple
    provenance: str = "user"

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence], n: int | None = None,
                  provenance: str = "user") -> "PolyhedralCone":
        rays = [tuple(as_fraction(x) for x in r) for r in rays]
        if n is None:
            if not rays:
                raise ValueError("ambient dimension required for an empty ray list")
            n = len(rays[0])
        _check_dims(rays, n)
        facets = facets_from_rays(rays, n)
        return cls(n, tuple(_dedupe(rays)), tuple(facets), provenance)

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence], n: int | None = None,
                    provenance: str = "user") -> "PolyhedralCone":
        facets = [tuple(as_fraction(x) for x in f) for f in facets]
        if n is None:
            if not facets:
                raise ValueError("ambient dimension required for an empty facet list")
            n = len(facets[0])
        _check_dims(facets, n)
        rays = rays_from_facets(facets, n)
        return cls(n, tuple(rays), tuple(_dedupe(facets)), provenance)

    @classmethod
    def from_both(cls, rays, facets, n: int | None = None, provenance: str = "user") -> "PolyhedralCone":
        rays = [tuple(as_fraction(x) for x in r) for r in rays]
        facets = [tuple(as_fraction(x) for x in f) for f in facets]
        if n is None:
            n = len(rays[0]) if rays else len(facets[0])
        _check_dims(rays, n)
        _check_dims(facets, n)
        cone = cls(n, tuple(_dedupe(rays)), tuple(_dedupe(facets)), provenance)
        cone.check_consistency()
        return cone

    @classmethod
    def orthant(cls, n: int) -> "PolyhedralCone":
        unit = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        return cls(n, tuple(sorted(unit)), tuple(sorted(unit)), "derived")

    # predicates --------------------------------------------------------

    def contains(self, v: Sequence) -> bool:
        """v lies in the closed cone."""
        return all(L.dot(f, v) >= 0 for f in self.facets)

    def interior_contains(self, v: Sequence) -> bool:
        """v strictly satisfies every facet inequality (membership in the open cone)."""
        return all(L.dot(f, v) > 0 for f in self.facets)

    def is_salient(self) -> bool:
        return L.rank([list(f) for f in self.facets]) == self.ambient_dim if self.facets else False

    def is_full_dimensional(self) -> bool:
        return L.rank([list(r) for r in self.rays]) == self.ambient_dim if self.rays else False

    def interior_point(self) -> Vector:
        return tuple(sum((r[i] for r in self.rays), Fraction(0)) for i in range(self.ambient_dim))

    def check_consistency(self) -> None:
        """Mutual containment of the cone generated by the rays and the facet cone."""
        n = self.ambient_dim
        for r in self.rays:
            if not self.contains(r):
                raise InconsistentCone(f"ray {list(map(str, r))} violates a facet inequality")
        implied = facets_from_rays(self.rays, n)
        for g in rays_from_facets(self.facets, n):
            if not all(L.dot(f, g) >= 0 for f in implied):
                raise InconsistentCone(f"facet cone contains {list(map(str, g))} outside the ray cone")

    def dual(self) -> "PolyhedralCone":
        return PolyhedralCone(self.ambient_dim, self.facets, self.rays, "derived")

    def contains_cone(self, other: "PolyhedralCone") -> bool:
        return all(self.contains(r) for r in other.rays)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyhedralCone):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.contains_cone(other) and other.contains_cone(self)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.facets))


def _check_dims(vectors, n):
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {n}")
