"""Finite stratified models: a poset of strata points with numerical groups
N_i(Z_x) = Q^{n_x}, pushforwards along the closure order, optional positive
cones and divisor pairings.

For a closed set V (a down-closed set of points) N_i(V) is modeled as the
colimit of the spaces N_i(Z_x), x in V, along the pushforwards: the direct sum
of the blocks modulo v ~ iota_{y<=x}(v).  Coordinates put lower points first,
so the RREF of the relations pivots on lower points and the normal form of a
class lives on the maximal points; for irreducible V this is N_i(Z_eta) itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from ..cones import PolyhedralCone
from ..errors import EmptySet, IncompatiblePairing, InvalidModel
from ..kernel import linalg as L
from ..kernel.poly import as_fraction

ClosedSet = frozenset  # of point ids, down-closed


@dataclass(frozen=True)
class Divisor:
    name: str
    support: frozenset  # closed set
    pairing: tuple  # covector on the direct-sum coordinates of the whole model


class StratifiedModel:
    def __init__(self, points: Sequence[tuple[str, int]], closure: Iterable[tuple[str, str]],
                 spaces: dict, pushforwards: dict, i: int = 1, cones: dict | None = None,
                 divisors: Sequence[Divisor] | None = None, label: str = ""):
        self.label = label
        self.i = int(i)
        ids = [str(p) for p, _ in points]
        if len(set(ids)) != len(ids):
            raise InvalidModel("duplicate point ids")
        self.dim = {str(p): int(d) for p, d in points}
        self.rank = {}
        for x in ids:
            n = int(spaces.get(x, 0))
            if n < 0:
                raise InvalidModel(f"negative rank at {x}")
            self.rank[x] = n
        # transitive closure of the generating pairs y <= x
        below = {x: set() for x in ids}
        gens = []
        for y, x in closure:
            y, x = str(y), str(x)
            if y not in below or x not in below:
                raise InvalidModel(f"closure pair ({y}, {x}) names an unknown point")
            if y == x:
                continue
            gens.append((y, x))
            below[x].add(y)
        changed = True
        while changed:
            changed = False
            for x in ids:
                extra = set()
                for y in below[x]:
                    extra |= below[y]
                if not extra <= below[x]:
                    below[x] |= extra
                    changed = True
        self._below = {x: frozenset(v) for x, v in below.items()}
        self.generating_pairs = tuple(gens)
        self.maps: dict = {}
        for key, mat in pushforwards.items():
            y, x = key if isinstance(key, tuple) else tuple(key.split("<"))
            M = [[as_fraction(a) for a in row] for row in mat] if mat else []
            if not (self.rank[x] and self.rank[y]):
                M = [[Fraction(0)] * self.rank[y] for _ in range(self.rank[x])]
            else:
                if len(M) != self.rank[x] or any(len(r) != self.rank[y] for r in M):
                    raise InvalidModel(f"pushforward {y}<{x} has the wrong shape")
            self.maps[(y, x)] = tuple(tuple(r) for r in M)
        self.ids = tuple(sorted(ids, key=lambda p: (self.dim[p], p)))
        self.cones = dict(cones or {})
        self.divisors = tuple(divisors or ())

    # -- order ---------------------------------------------------------------

    def below(self, x: str) -> frozenset:
        """Points strictly below x."""
        return self._below[x]

    def leq(self, y: str, x: str) -> bool:
        return y == x or y in self._below[x]

    def principal(self, x: str) -> ClosedSet:
        """Z_x as a closed set."""
        return frozenset(self._below[x] | {x})

    def closure_of(self, pts: Iterable[str]) -> ClosedSet:
        out = set()
        for x in pts:
            out |= self.principal(x)
        return frozenset(out)

    def is_closed(self, V: Iterable[str]) -> bool:
        V = frozenset(V)
        return all(self._below[x] <= V for x in V)

    def maximal(self, V: Iterable[str]) -> list[str]:
        V = frozenset(V)
        return sorted((x for x in V if not any(x in self._below[y] for y in V)),
                      key=lambda p: (-self.dim[p], p))

    @property
    def whole(self) -> ClosedSet:
        return frozenset(self.ids)

    def closed_sets(self, limit: int | None = None) -> list[ClosedSet]:
        """All nonempty closed sets (unions of principal ones), sorted canonically."""
        seen = {self.principal(x) for x in self.ids}
        frontier = list(seen)
        while frontier:
            nxt = []
            for V in frontier:
                for x in self.ids:
                    if x in V:
                        continue
                    W = V | self.principal(x)
                    if W not in seen:
                        seen.add(W)
                        nxt.append(W)
                        if limit is not None and len(seen) > limit:
                            return self._sorted(seen)
            frontier = nxt
        return self._sorted(seen)

    def _sorted(self, sets) -> list[ClosedSet]:
        return sorted(sets, key=lambda V: (len(V), sorted(V)))

    def as_closed(self, V: Iterable[str]) -> ClosedSet:
        V = frozenset(str(x) for x in V)
        if not V:
            raise EmptySet("closed sets must be nonempty")
        unknown = V - set(self.ids)
        if unknown:
            raise InvalidModel(f"unknown points {sorted(unknown)}")
        return self.closure_of(V)

    # -- pushforwards --------------------------------------------------------

    def _composites(self, y: str, x: str) -> dict:
        """All composites y -> x along chains of generating pairs, keyed by matrix."""
        memo = self.__dict__.setdefault("_comp_memo", {})
        if (y, x) in memo:
            return memo[(y, x)]
        out: dict = {}
        for (a, b) in self.generating_pairs:
            if a != y or not self.leq(b, x):
                continue
            first = self._edge(a, b)
            if b == x:
                out.setdefault(first, (y, x))
            else:
                for M, chain in self._composites(b, x).items():
                    C = _mat_mul(M, first, self.rank[x], self.rank[y])
                    out.setdefault(C, (y,) + chain)
        memo[(y, x)] = out
        return out

    def _edge(self, y, x):
        M = self.maps.get((y, x))
        if M is None:
            if self.rank[x] and self.rank[y]:
                raise InvalidModel(f"missing pushforward {y}<{x}")
            M = tuple(tuple(Fraction(0) for _ in range(self.rank[y])) for _ in range(self.rank[x]))
        return M

    def iota(self, y: str, x: str) -> tuple:
        """The pushforward N_i(Z_y) -> N_i(Z_x) for y <= x."""
        if y == x:
            return tuple(tuple(Fraction(int(a == b)) for b in range(self.rank[x])) for a in range(self.rank[x]))
        if not self.leq(y, x):
            raise InvalidModel(f"{y} is not below {x}")
        comps = self._composites(y, x)
        return next(iter(comps))

    def push(self, y: str, x: str, v: Sequence) -> tuple:
        M = self.iota(y, x)
        if not self.rank[x]:
            return ()
        return tuple(sum((M[r][c] * v[c] for c in range(len(v))), Fraction(0)) for r in range(self.rank[x]))

    # -- colimit spaces ------------------------------------------------------

    def colimit(self, V: Iterable[str]) -> "ColimitSpace":
        V = frozenset(V)
        cache = self.__dict__.setdefault("_colimits", {})
        sp = cache.get(V)
        if sp is None:
            sp = ColimitSpace(self, V)
            cache[V] = sp
        return sp

    # -- cones and pairings --------------------------------------------------

    def cone(self, x: str) -> PolyhedralCone | None:
        return self.cones.get(x)

    def divisor(self, name: str) -> Divisor:
        for d in self.divisors:
            if d.name == name:
                return d
        raise InvalidModel(f"unknown divisor {name!r}")


def _mat_mul(A, B, rows, cols) -> tuple:
    if not rows or not cols:
        return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))
    inner = len(B)
    return tuple(tuple(sum((A[r][k] * B[k][c] for k in range(inner)), Fraction(0)) for c in range(cols))
                 for r in range(rows))


class ColimitSpace:
    """N_i(V) for a closed set V, with a normal form for its elements."""

    def __init__(self, model: StratifiedModel, V: frozenset):
        self.model = model
        self.V = V
        self.order = tuple(x for x in model.ids if x in V)  # lower points first
        self.offset = {}
        pos = 0
        for x in self.order:
            self.offset[x] = pos
            pos += model.rank[x]
        self.total = pos
        rels = []
        for y in self.order:
            if not model.rank[y]:
                continue
            for x in self.order:
                if x == y or not model.leq(y, x):
                    continue
                # covering pairs suffice once compositions agree; use every pair for robustness
                M = model.iota(y, x)
                for c in range(model.rank[y]):
                    row = [Fraction(0)] * self.total
                    row[self.offset[y] + c] = Fraction(1)
                    for r in range(model.rank[x]):
                        row[self.offset[x] + r] -= M[r][c]
                    rels.append(row)
        if rels:
            R, piv = L.rref(rels)
            self._rows = [R[k] for k in range(len(piv))]
            self._piv = list(piv)
        else:
            self._rows, self._piv = [], []

    @property
    def rank(self) -> int:
        return self.total - len(self._piv)

    def zero(self) -> tuple:
        return tuple(Fraction(0) for _ in range(self.total))

    def embed(self, x: str, v: Sequence) -> tuple:
        out = [Fraction(0)] * self.total
        o = self.offset[x]
        for k, a in enumerate(v):
            out[o + k] = as_fraction(a)
        return tuple(out)

    def normal_form(self, w: Sequence) -> tuple:
        w = list(w)
        for row, p in zip(self._rows, self._piv):
            c = w[p]
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        return tuple(w)

    def element(self, x: str, v: Sequence) -> tuple:
        return self.normal_form(self.embed(x, v))

    def add(self, a, b) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        return tuple(x - y for x, y in zip(a, b))

    def transfer(self, w: Sequence, target: "ColimitSpace") -> tuple:
        """Push a class of N_i(V) into N_i(V') for V contained in V'."""
        if not self.V <= target.V:
            raise InvalidModel("pushforward between closed sets needs an inclusion")
        out = [Fraction(0)] * target.total
        for x in self.order:
            o, t = self.offset[x], target.offset[x]
            for k in range(self.model.rank[x]):
                out[t + k] += w[o + k]
        return target.normal_form(out)

    def pair(self, covector: Sequence, w: Sequence) -> Fraction:
        """Evaluate a covector on the direct-sum coordinates; it must vanish on the relations."""
        if len(covector) != self.total:
            raise IncompatiblePairing(f"covector of length {len(covector)} on a space with {self.total} coordinates")
        cov = [as_fraction(c) for c in covector]
        for row in self._rows:
            if sum((a * b for a, b in zip(cov, row)), Fraction(0)) != 0:
                raise IncompatiblePairing("covector does not factor through the colimit")
        return sum((a * b for a, b in zip(cov, w)), Fraction(0))

    def coords_at(self, w: Sequence, x: str) -> tuple:
        o = self.offset[x]
        return tuple(w[o:o + self.model.rank[x]])


# ---------------------------------------------------------------------------
# validation


@dataclass
class ModelReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"passed": self.passed, "violations": list(self.violations)}


def validate_model(m: StratifiedModel) -> ModelReport:
    rep = ModelReport()
    for x in m.ids:
        if x in m.below(x):
            rep.violations.append(f"closure order has a cycle through {x}")
    for x in m.ids:
        for y in m.below(x):
            if m.dim[y] >= m.dim[x]:
                rep.violations.append(f"dimension does not drop along {y} < {x} ({m.dim[y]} vs {m.dim[x]})")
    for x in m.ids:
        if m.dim[x] < m.i and m.rank[x]:
            rep.violations.append(f"{x} has dimension {m.dim[x]} < {m.i} but a nonzero space")
    for x in m.ids:
        for y in sorted(m.below(x)):
            try:
                comps = m._composites(y, x)
            except InvalidModel as e:
                rep.violations.append(str(e))
                continue
            if len(comps) > 1:
                chains = sorted(" < ".join(c) for c in comps.values())
                rep.violations.append(f"pushforwards do not compose from {y} to {x}: chains {chains}")
    for x, cone in m.cones.items():
        if x not in m.rank:
            rep.violations.append(f"cone given for unknown point {x}")
            continue
        if cone is None:
            continue
        if cone.ambient_dim != m.rank[x]:
            rep.violations.append(f"cone at {x} lives in dimension {cone.ambient_dim}, space has rank {m.rank[x]}")
        elif m.rank[x] and not (cone.is_salient() and cone.is_full_dimensional()):
            rep.violations.append(f"cone at {x} is not salient and full-dimensional")
    whole = None
    for d in m.divisors:
        if not m.is_closed(d.support):
            rep.violations.append(f"divisor {d.name} support is not closed")
        whole = whole or m.colimit(m.whole)
        try:
            whole.pair(d.pairing, whole.zero())
        except IncompatiblePairing as e:
            rep.violations.append(f"divisor {d.name}: {e}")
            continue
        for x, cone in m.cones.items():
            if cone is None or x in d.support or not m.rank.get(x):
                continue
            for r in cone.rays:
                if whole.pair(d.pairing, whole.element(x, r)) < 0:
                    rep.violations.append(f"divisor {d.name} is negative on the cone at {x} off its support")
                    break
    return rep


def require_valid(m: StratifiedModel) -> None:
    rep = validate_model(m)
    if not rep.passed:
        raise InvalidModel("; ".join(rep.violations))


def all_pairs(sets: Sequence) -> Iterable:
    return combinations(sets, 2)
