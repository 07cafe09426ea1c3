"""Generated cycles on a finite stratified model.

A generated cycle is stored by its atoms v_x in N_i(Z_x): alpha = sum_x v_x delta_x,
where v delta_x restricts to v (pushed forward) on every closed set containing x
and to 0 elsewhere.  Its Psi components are the restrictions to the irreducible
closed sets, Psi(alpha)_y = sum_{x <= y} iota(v_x), and the atoms are recovered
from them bottom-up.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import EmptySet, InvalidModel, NotDual, NotPositive, SupportMeetsD
from ..kernel.poly import as_fraction
from .model import ClosedSet, StratifiedModel, require_valid


def _vec(v, n) -> tuple:
    v = tuple(as_fraction(a) for a in v)
    if len(v) != n:
        raise InvalidModel(f"expected a vector of length {n}, got {len(v)}")
    return v


class GeneratedCycle:
    def __init__(self, model: StratifiedModel, atoms: dict | None = None):
        self.model = model
        a = {}
        for x in model.ids:
            v = (atoms or {}).get(x)
            a[x] = _vec(v, model.rank[x]) if v is not None else tuple(Fraction(0) for _ in range(model.rank[x]))
        extra = set(atoms or {}) - set(model.ids)
        if extra:
            raise InvalidModel(f"atoms at unknown points {sorted(extra)}")
        self.atoms = a

    @classmethod
    def zero(cls, model) -> "GeneratedCycle":
        return cls(model, {})

    @classmethod
    def from_psi(cls, model: StratifiedModel, components: dict) -> "GeneratedCycle":
        """Inverse of Psi: v_y = Psi_y - sum_{x < y} iota(v_x), bottom-up."""
        atoms: dict = {}
        for y in model.ids:  # lower points first
            psi_y = components.get(y)
            psi_y = _vec(psi_y, model.rank[y]) if psi_y is not None else tuple(Fraction(0) for _ in range(model.rank[y]))
            acc = list(psi_y)
            for x in model.below(y):
                pv = model.push(x, y, atoms[x])
                acc = [a - b for a, b in zip(acc, pv)]
            atoms[y] = tuple(acc)
        return cls(model, atoms)

    def psi(self) -> dict:
        """Psi components: the restriction to every irreducible closed set Z_y."""
        m = self.model
        out = {}
        for y in m.ids:
            acc = list(self.atoms[y])
            for x in m.below(y):
                pv = m.push(x, y, self.atoms[x])
                acc = [a + b for a, b in zip(acc, pv)]
            out[y] = tuple(acc)
        return out

    def __add__(self, other: "GeneratedCycle") -> "GeneratedCycle":
        return GeneratedCycle(self.model, {x: tuple(a + b for a, b in zip(self.atoms[x], other.atoms[x]))
                                           for x in self.model.ids})

    def __sub__(self, other: "GeneratedCycle") -> "GeneratedCycle":
        return GeneratedCycle(self.model, {x: tuple(a - b for a, b in zip(self.atoms[x], other.atoms[x]))
                                           for x in self.model.ids})

    def scale(self, c) -> "GeneratedCycle":
        c = as_fraction(c)
        return GeneratedCycle(self.model, {x: tuple(c * a for a in v) for x, v in self.atoms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratedCycle) and self.model is other.model and self.atoms == other.atoms

    def __hash__(self):
        return hash(tuple(sorted(self.atoms.items())))

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.atoms.values())

    def to_json(self) -> dict:
        return {"atoms": {x: [str(a) for a in v] for x, v in self.atoms.items() if any(v)},
                "psi": {x: [str(a) for a in v] for x, v in self.psi().items() if any(v)}}

    def __repr__(self) -> str:
        return f"GeneratedCycle({ {x: [str(a) for a in v] for x, v in self.atoms.items() if any(v)} })"


def psi(alpha: GeneratedCycle) -> dict:
    return alpha.psi()


def psi_inverse(model: StratifiedModel, components: dict) -> GeneratedCycle:
    return GeneratedCycle.from_psi(model, components)


# ---------------------------------------------------------------------------
# restriction to closed sets


def _components(model: StratifiedModel, V: ClosedSet, order: Sequence[str] | None) -> list[str]:
    comps = model.maximal(V)
    if order is not None:
        rank = {x: k for k, x in enumerate(order)}
        comps.sort(key=lambda x: rank.get(x, len(rank)))
    return comps


def R_closed(alpha: GeneratedCycle, V: Iterable[str], order: Sequence[str] | None = None,
             _memo: dict | None = None) -> tuple:
    """h(alpha)_V in N_i(V), by induction on (dim V, number of components).

    Irreducible V = Z_eta gives Psi(alpha)_eta; otherwise V = V_1 u W with V_1 the
    first component in canonical order (or in ``order``) and
    h_V = h_{V_1} + h_W - h_{V_1 n W}, all pushed into N_i(V).
    """
    m = alpha.model
    V = frozenset(V)
    if not V:
        raise EmptySet("R is defined on nonempty closed sets")
    if not m.is_closed(V):
        raise InvalidModel("R_closed needs a closed set")
    memo = {} if _memo is None else _memo
    psi_vals = memo.get("__psi__")
    if psi_vals is None:
        psi_vals = memo["__psi__"] = alpha.psi()

    def h(W: frozenset) -> tuple:
        if W in memo:
            return memo[W]
        sp = m.colimit(W)
        comps = _components(m, W, order)
        if len(comps) == 1:
            val = sp.element(comps[0], psi_vals[comps[0]])
        else:
            V1 = m.principal(comps[0])
            rest = m.closure_of(comps[1:])
            inter = V1 & rest
            val = sp.add(m.colimit(V1).transfer(h(V1), sp), m.colimit(rest).transfer(h(rest), sp))
            if inter:
                val = sp.sub(val, m.colimit(inter).transfer(h(inter), sp))
        memo[W] = val
        return val

    return h(V)


def R_direct(alpha: GeneratedCycle, V: Iterable[str]) -> tuple:
    """sum_{x in V} v_x in N_i(V): the restriction read off the atoms."""
    m = alpha.model
    V = frozenset(V)
    if not V:
        raise EmptySet("R is defined on nonempty closed sets")
    sp = m.colimit(V)
    acc = sp.zero()
    for x in sp.order:
        if any(alpha.atoms[x]):
            acc = tuple(a + b for a, b in zip(acc, sp.embed(x, alpha.atoms[x])))
    return sp.normal_form(acc)


@dataclass
class CutPasteReport:
    V1: frozenset
    V2: frozenset
    lhs: tuple
    rhs: tuple

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def cut_and_paste_check(alpha: GeneratedCycle, V1, V2, memo: dict | None = None) -> CutPasteReport:
    """R_{V1} + R_{V2} against R_{V1 u V2} + R_{V1 n V2} in N_i(V1 u V2)."""
    m = alpha.model
    V1, V2 = frozenset(V1), frozenset(V2)
    U = V1 | V2
    I = V1 & V2
    memo = {} if memo is None else memo
    sp = m.colimit(U)
    lhs = sp.add(m.colimit(V1).transfer(R_closed(alpha, V1, _memo=memo), sp),
                 m.colimit(V2).transfer(R_closed(alpha, V2, _memo=memo), sp))
    rhs = R_closed(alpha, U, _memo=memo)
    if I:
        rhs = sp.add(rhs, m.colimit(I).transfer(R_closed(alpha, I, _memo=memo), sp))
    return CutPasteReport(V1, V2, lhs, rhs)


# ---------------------------------------------------------------------------
# constructible restriction


def pi_constructible(alpha: GeneratedCycle, W: Iterable[str]) -> GeneratedCycle:
    """The part of alpha supported on W: atoms at points of W are kept, the rest dropped."""
    W = frozenset(W)
    unknown = W - set(alpha.model.ids)
    if unknown:
        raise InvalidModel(f"unknown points {sorted(unknown)}")
    return GeneratedCycle(alpha.model, {x: v for x, v in alpha.atoms.items() if x in W})


def _pi_closed_psi(alpha: GeneratedCycle, V: frozenset, memo: dict) -> dict:
    """Psi components of pi_V(alpha) for closed V: (pi_V alpha)_{Z_x} = alpha_{Z_x n V}."""
    m = alpha.model
    out = {}
    for x in m.ids:
        Zx = m.principal(x)
        inter = Zx & V
        if not inter:
            out[x] = tuple(Fraction(0) for _ in range(m.rank[x]))
            continue
        val = R_closed(alpha, inter, _memo=memo)
        sp_x = m.colimit(Zx)
        w = m.colimit(inter).transfer(val, sp_x)
        out[x] = sp_x.coords_at(w, x)
    return out


def pi_recursive(alpha: GeneratedCycle, W: Iterable[str], _memo: dict | None = None) -> GeneratedCycle:
    """pi_W through the subtractive recursion pi_W = pi_{closure W} - pi_{closure W minus W}.

    Only closed restrictions are evaluated directly, on the Psi side, from the
    values of R on closed sets.
    """
    m = alpha.model
    W = frozenset(W)
    memo = {} if _memo is None else _memo
    if not W:
        return GeneratedCycle.zero(m)
    Wbar = m.closure_of(W)
    top = GeneratedCycle.from_psi(m, _pi_closed_psi(alpha, Wbar, memo))
    rest = Wbar - W
    if not rest:
        return top
    return top - pi_recursive(alpha, rest, memo)


# ---------------------------------------------------------------------------
# support, atoms, intersection numbers, measures


def support(alpha: GeneratedCycle) -> frozenset:
    """Points x with pi_{x}(alpha) != 0; the singleton {x} is constructible in a finite model."""
    return frozenset(x for x, v in alpha.atoms.items() if any(v))


def _cone_violation(model: StratifiedModel, x: str, v: tuple):
    cone = model.cone(x)
    if not model.rank[x]:
        return None
    if cone is None:
        raise InvalidModel(f"no positive cone declared at {x}")
    for f in cone.facets:
        if sum((a * b for a, b in zip(f, v)), Fraction(0)) < 0:
            return f
    return None


def atomic_decomposition(alpha: GeneratedCycle) -> list[tuple[str, tuple]]:
    """The atoms (x, v_x) with v_x != 0, each certified to lie in the cone declared at x."""
    out = []
    for x in alpha.model.ids:
        v = alpha.atoms[x]
        if not any(v):
            continue
        bad = _cone_violation(alpha.model, x, v)
        if bad is not None:
            raise NotPositive(x, tuple(str(a) for a in bad))
        out.append((x, v))
    return out


def reconstruct(model: StratifiedModel, atoms: Sequence[tuple[str, tuple]]) -> GeneratedCycle:
    acc = GeneratedCycle.zero(model)
    for x, v in atoms:
        acc = acc + GeneratedCycle(model, {x: v})
    return acc


def is_positive(alpha: GeneratedCycle) -> bool:
    try:
        atomic_decomposition(alpha)
    except NotPositive:
        return False
    return True


def intersection_number(alpha: GeneratedCycle, V: Iterable[str], beta: Sequence) -> Fraction:
    """(R_V(alpha) . beta) for a covector beta on the direct-sum coordinates of N_i(V)."""
    m = alpha.model
    V = frozenset(V)
    return m.colimit(V).pair(beta, R_closed(alpha, V))


class FiniteVectorMeasure:
    """W -> R_X(pi_W alpha) in N_i(X), paired with beta to give nu(beta, alpha)."""

    def __init__(self, alpha: GeneratedCycle, beta: Sequence):
        self.alpha = alpha
        self.model = alpha.model
        self.space = self.model.colimit(self.model.whole)
        self.beta = tuple(as_fraction(b) for b in beta)
        self.space.pair(self.beta, self.space.zero())

    def vector(self, W: Iterable[str]) -> tuple:
        return R_direct(pi_constructible(self.alpha, W), self.model.whole)

    def __call__(self, W: Iterable[str]) -> Fraction:
        return self.space.pair(self.beta, self.vector(W))

    def cells(self) -> dict:
        return {x: self({x}) for x in self.model.ids}

    def total(self) -> Fraction:
        return self(self.model.ids)


def vector_measure(alpha: GeneratedCycle, beta: Sequence) -> FiniteVectorMeasure:
    m = alpha.model
    meas = FiniteVectorMeasure(alpha, beta)
    sp = meas.space
    for x in m.ids:
        cone = m.cone(x)
        if not m.rank[x] or cone is None:
            continue
        for r in cone.rays:
            if sp.pair(meas.beta, sp.element(x, r)) < 0:
                raise NotDual(f"beta is negative on the cone at {x}")
    atomic_decomposition(alpha)
    for x, val in meas.cells().items():
        if val < 0:
            raise NotPositive(x, None, f"measure of the cell {{{x}}} is negative: {val}")
    return meas


@dataclass
class DisjointSupportReport:
    divisor: str
    value: Fraction

    @property
    def passed(self) -> bool:
        return self.value >= 0


def disjoint_support_positivity(alpha: GeneratedCycle, divisor) -> DisjointSupportReport:
    m = alpha.model
    D = m.divisor(divisor) if isinstance(divisor, str) else divisor
    if support(alpha) & D.support:
        raise SupportMeetsD(f"the support meets {D.name}")
    atomic_decomposition(alpha)
    sp = m.colimit(m.whole)
    return DisjointSupportReport(D.name, sp.pair(D.pairing, R_direct(alpha, m.whole)))


# ---------------------------------------------------------------------------
# whole-model calculus check


@dataclass
class CalculusReport:
    closed_sets: int
    pairs_checked: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def calculus_check(alpha: GeneratedCycle, max_sets: int = 48, max_pairs: int = 600, seed: int = 0,
                   permutations: int = 2) -> CalculusReport:
    """Cut-and-paste over pairs of closed sets, the two routes for R and for pi,
    Psi round trip, partition additivity and atomic reconstruction."""
    m = alpha.model
    require_valid(m)
    rng = random.Random(seed)
    sets = m.closed_sets(limit=max_sets)
    if len(sets) > max_sets:
        sets = sorted(rng.sample(sets, max_sets), key=lambda V: (len(V), sorted(V)))
    fails = []
    memo: dict = {}
    for V in sets:
        if R_closed(alpha, V, _memo=memo) != R_direct(alpha, V):
            fails.append(("R-routes", sorted(V)))
    for _ in range(permutations):
        order = list(m.ids)
        rng.shuffle(order)
        pm: dict = {}
        for V in sets:
            if R_closed(alpha, V, order=order, _memo=pm) != memo.get(V, R_closed(alpha, V, _memo=memo)):
                fails.append(("order-dependence", sorted(V)))
    pairs = [(a, b) for k, a in enumerate(sets) for b in sets[k:]]
    if len(pairs) > max_pairs:
        pairs = rng.sample(pairs, max_pairs)
    for V1, V2 in pairs:
        if not cut_and_paste_check(alpha, V1, V2, memo).passed:
            fails.append(("cut-and-paste", sorted(V1), sorted(V2)))
    if GeneratedCycle.from_psi(m, alpha.psi()) != alpha:
        fails.append(("psi-round-trip",))
    # a random partition into constructible cells
    cells: dict = {}
    for x in m.ids:
        cells.setdefault(rng.randrange(3), set()).add(x)
    total = GeneratedCycle.zero(m)
    for c in cells.values():
        part = pi_constructible(alpha, c)
        if part != pi_recursive(alpha, c):
            fails.append(("pi-routes", sorted(c)))
        if not support(part) <= c:
            fails.append(("support", sorted(c)))
        total = total + part
    if total != alpha:
        fails.append(("partition-additivity",))
    if is_positive(alpha) and reconstruct(m, atomic_decomposition(alpha)) != alpha:
        fails.append(("reconstruction",))
    return CalculusReport(len(sets), len(pairs), fails)
