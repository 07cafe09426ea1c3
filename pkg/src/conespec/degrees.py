"""Dynamical degrees, Lyapunov-exponent profiles and the big/ample cone spectra
they determine, computed from user-supplied graded pullback data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cones import PolyhedralCone, cone_spectrum
from .cones.amplified import SpectrumResult
from .errors import EmptyTree, InvalidSystem, LogConcavityViolated, SpectrumMismatch
from .kernel.algebraic import RealAlgebraic
from .kernel.linalg import RationalMatrix
from .kernel.spectrum import spectral_radius

ONE = RealAlgebraic.from_rational(1)
ZERO = RealAlgebraic.from_rational(0)


@dataclass(frozen=True)
class GradedPullbackSystem:
    d: int
    pullbacks: tuple
    ample_model: PolyhedralCone | None = None
    big_model: PolyhedralCone | None = None
    label: str = ""

    def __post_init__(self):
        pbs = tuple(RationalMatrix.coerce(m) for m in self.pullbacks)
        object.__setattr__(self, "pullbacks", pbs)
        if self.d < 0:
            raise InvalidSystem("dimension must be nonnegative")
        if len(pbs) != self.d + 1:
            raise InvalidSystem(f"expected {self.d + 1} pullback matrices, got {len(pbs)}")
        if pbs[0].rows != ((Fraction(1),),):
            raise InvalidSystem("pullback on N^0 must be (1)")
        top = pbs[-1]
        if top.n != 1:
            raise InvalidSystem("pullback on N^d must be 1x1")
        deg = top.rows[0][0]
        if deg < 1 or deg.denominator != 1:
            raise InvalidSystem(f"topological degree must be an integer >= 1, got {deg}")
        for model in (self.ample_model, self.big_model):
            if model is not None and (self.d < 1 or model.ambient_dim != pbs[1].n):
                raise InvalidSystem("cone models must live in N^1")

    @property
    def degree(self) -> Fraction:
        return self.pullbacks[-1].rows[0][0]

    def same_data(self, other: "GradedPullbackSystem") -> bool:
        return self.d == other.d and self.pullbacks == other.pullbacks


@dataclass(frozen=True)
class DegreeProfile:
    lambdas: tuple  # lambda_0 .. lambda_d
    mus: tuple  # mu_1 .. mu_{d+1}, mu_{d+1} = 0

    @property
    def d(self) -> int:
        return len(self.lambdas) - 1

    def mu(self, i: int) -> RealAlgebraic:
        return self.mus[i - 1]


def dynamical_degrees(sys: GradedPullbackSystem) -> DegreeProfile:
    lambdas = tuple(spectral_radius(m) for m in sys.pullbacks)
    if lambdas[0] != ONE:
        raise InvalidSystem("lambda_0 must equal 1")
    if lambdas[-1] != RealAlgebraic.from_rational(sys.degree):
        raise InvalidSystem("lambda_d must equal the topological degree")
    for i in range(1, sys.d):
        if lambdas[i] ** 2 < lambdas[i - 1] * lambdas[i + 1]:
            raise LogConcavityViolated(i)
    mus = tuple(lambdas[i] / lambdas[i - 1] for i in range(1, sys.d + 1)) + (ZERO,)
    return DegreeProfile(lambdas, mus)


def _distinct_sorted(values: Iterable[RealAlgebraic]) -> tuple:
    out: list[RealAlgebraic] = []
    for v in values:
        if not any(v == w for w in out):
            out.append(v)
    return tuple(sorted(out))


def big_spectrum(sys: GradedPullbackSystem) -> tuple:
    """{mu_1, ..., mu_d} with duplicates collapsed, ascending."""
    prof = dynamical_degrees(sys)
    return _distinct_sorted(prof.mus[:sys.d])


# ---------------------------------------------------------------------------
# periodic subsystem trees


@dataclass(frozen=True)
class SubsystemNode:
    name: str
    period: int
    system: GradedPullbackSystem
    children: tuple = ()

    @property
    def d(self) -> int:
        return self.system.d

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


def validate_tree(root: SubsystemNode) -> None:
    if root is None:
        raise EmptyTree("no subsystem tree supplied")
    if root.period != 1:
        raise InvalidSystem("the root of a subsystem tree must have period 1")

    def rec(node):
        if node.period < 1:
            raise InvalidSystem(f"node {node.name!r} has non-positive period")
        for c in node.children:
            if c.d >= node.d:
                raise InvalidSystem(f"node {c.name!r} is not of smaller dimension than {node.name!r}")
            rec(c)

    rec(root)


def node_contribution(node: SubsystemNode) -> tuple:
    """mu_i(V, f) for i = 1..d_V: r-th roots of the profile of the supplied f^r|_V."""
    if node.d == 0:
        return ()
    prof = dynamical_degrees(node.system)
    return _distinct_sorted(m.nth_root(node.period) for m in prof.mus[:node.d])


@dataclass(frozen=True)
class AmpleSpectrum:
    values: tuple
    contributions: tuple  # (name, period, values)
    notes: tuple = ()
    period_conflicts: tuple = ()  # names whose contributions differ across periods

    def __iter__(self):
        return iter(self.values)


def ample_spectrum(tree: SubsystemNode) -> AmpleSpectrum:
    """Union over the nodes of the tree of their mu_i(V, f)."""
    validate_tree(tree)
    contribs = []
    by_name: dict = {}
    for node in tree.walk():
        vals = node_contribution(node)
        contribs.append((node.name, node.period, vals))
        by_name.setdefault(node.name, []).append((node.period, vals))
    conflicts = []
    for name, entries in by_name.items():
        periods = {p for p, _ in entries}
        if len(periods) > 1:
            first = set(entries[0][1])
            if any(set(v) != first for _, v in entries[1:]):
                conflicts.append(name)
    values = _distinct_sorted(v for _, _, vals in contribs for v in vals)
    notes = []
    if not tree.children:
        notes.append("no proper periodic data supplied; ample spectrum is a lower bound")
    return AmpleSpectrum(values, tuple(contribs), tuple(notes), tuple(sorted(conflicts)))


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    hyperbolic: bool
    quasi_amplified: bool
    amplified: bool | None
    int_amplified: bool
    hyperbolic_witness: tuple | None = None  # (i, mu_i) with mu_i = 1
    quasi_amplified_witness: RealAlgebraic | None = None
    amplified_witness: tuple | None = None  # (node name, value 1)
    int_amplified_witness: RealAlgebraic | None = None  # mu_d when <= 1

    def to_json(self) -> dict:
        out = {"hyperbolic": self.hyperbolic, "quasi_amplified": self.quasi_amplified,
               "amplified": self.amplified, "int_amplified": self.int_amplified}
        if self.hyperbolic_witness:
            out["hyperbolic_witness"] = {"i": self.hyperbolic_witness[0], "mu": str(self.hyperbolic_witness[1])}
        if self.quasi_amplified_witness is not None:
            out["quasi_amplified_witness"] = str(self.quasi_amplified_witness)
        if self.amplified_witness is not None:
            out["amplified_witness"] = {"node": self.amplified_witness[0], "mu": str(self.amplified_witness[1])}
        if self.int_amplified_witness is not None:
            out["int_amplified_witness"] = str(self.int_amplified_witness)
        return out


def classify(sys: GradedPullbackSystem, tree: SubsystemNode | None = None) -> Classification:
    prof = dynamical_degrees(sys)
    mus = prof.mus[:sys.d]
    hyp_w = next(((i + 1, m) for i, m in enumerate(mus) if m == ONE), None)
    big = big_spectrum(sys)
    quasi_w = next((m for m in big if m == ONE), None)
    amp = None
    amp_w = None
    if tree is not None:
        if not tree.system.same_data(sys):
            raise InvalidSystem("the tree root does not carry the given system")
        ample = ample_spectrum(tree)
        amp = not any(v == ONE for v in ample.values)
        if not amp:
            amp_w = next((name, v) for name, _, vals in ample.contributions for v in vals if v == ONE)
    if sys.d == 0:
        int_amp, int_w = False, None
    else:
        mu_d = mus[-1]
        int_amp = mu_d > ONE
        int_w = None if int_amp else mu_d
    return Classification(hyp_w is None, quasi_w is None, amp, int_amp, hyp_w, quasi_w, amp_w, int_w)


@dataclass(frozen=True)
class FactorReport:
    ample_source: tuple
    ample_target: tuple
    big_source: tuple
    big_target: tuple
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations


def factor_consistency(source_tree: SubsystemNode, target_tree: SubsystemNode) -> FactorReport:
    """Spectral consequence of a semi-conjugacy: the target's spectra sit inside the source's."""
    a_src = ample_spectrum(source_tree).values
    a_tgt = ample_spectrum(target_tree).values
    b_src = big_spectrum(source_tree.system)
    b_tgt = big_spectrum(target_tree.system)
    violations = []
    for v in a_tgt:
        if not any(v == w for w in a_src):
            violations.append(("ample", v))
    for v in b_tgt:
        if not any(v == w for w in b_src):
            violations.append(("big", v))
    return FactorReport(a_src, a_tgt, b_src, b_tgt, tuple(violations))


@dataclass(frozen=True)
class CrossCheckReport:
    cone_members: tuple
    mu_values: tuple
    cone_result: SpectrumResult = field(compare=False)

    @property
    def passed(self) -> bool:
        return set(self.cone_members) == set(self.mu_values) and len(self.cone_members) == len(self.mu_values)


def cross_check_big(sys: GradedPullbackSystem, strict: bool = True) -> CrossCheckReport:
    """Cone spectrum of f* on the big-cone model against the mu profile."""
    if sys.big_model is None:
        raise InvalidSystem("cross_check_big needs a big_model")
    res = cone_spectrum(sys.pullbacks[1], sys.big_model)
    report = CrossCheckReport(tuple(res.members), big_spectrum(sys), res)
    if strict and not report.passed:
        raise SpectrumMismatch("cone spectrum of the big model differs from {mu_i}", report)
    return report


def lyapunov_set(tree: SubsystemNode) -> tuple:
    """Alias for the aggregated ample-spectrum values of a tree."""
    return ample_spectrum(tree).values


def contains_value(values: Sequence[RealAlgebraic], x) -> bool:
    x = RealAlgebraic.coerce(x)
    return any(x == v for v in values)
