"""Amplification tests against a good invariant cone and the cone spectrum.

A matrix M is alpha-amplified for the open cone C (the interior of a closed
polyhedral cone K) when some N has (M - alpha) N in C.  Equivalently the
column span of M - alpha meets the interior of K, which is decided exactly by
:func:`strict_feasibility` over Q or over Q(alpha).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..errors import (
    BadCone,
    DimensionMismatch,
    InvalidAlpha,
    NotInvariant,
    SubspaceMissesCone,
    TooManyEigenvalues,
)
from ..kernel import linalg as L
from ..kernel.algebraic import RealAlgebraic
from ..kernel.numberfield import NumberField, compositum, field_of
from ..kernel.linalg import RationalMatrix
from ..kernel.spectrum import generalized_eigenspace, spectrum
from .lp import strict_feasibility
from .polyhedral import PolyhedralCone, primitive

log = logging.getLogger("conespec.cones")

MAX_EIGENVALUES = 12


# ---------------------------------------------------------------------------
# good cones


@dataclass(frozen=True)
class GoodConeCertificate:
    invariance: str  # "exact-equality", "forward-only" or "fails"
    salient: bool
    full_dim: bool
    invertible: bool
    witness_failures: tuple = ()  # (ray, image) pairs with image outside K
    preimage_failures: tuple = ()  # (ray, preimage) pairs with preimage outside K

    @property
    def ok(self) -> bool:
        return self.invariance == "exact-equality" and self.salient and self.full_dim

    @property
    def ok_forward(self) -> bool:
        return self.invariance in ("exact-equality", "forward-only") and self.salient and self.full_dim

    def describe(self) -> str:
        parts = [f"invariance={self.invariance}", f"salient={self.salient}", f"full_dim={self.full_dim}"]
        for ray, img in self.witness_failures:
            parts.append(f"ray {_fmt(ray)} maps to {_fmt(img)} outside the cone")
        for ray, pre in self.preimage_failures:
            parts.append(f"ray {_fmt(ray)} has preimage {_fmt(pre)} outside the cone")
        return "; ".join(parts)


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def validate_good_cone(M, K: PolyhedralCone) -> GoodConeCertificate:
    M = RationalMatrix.coerce(M)
    if M.n != K.ambient_dim:
        raise DimensionMismatch(f"matrix of size {M.n} against a cone in dimension {K.ambient_dim}")
    fails = []
    for r in K.rays:
        img = L.mat_vec(M.rows, r)
        if not K.contains(img):
            fails.append((tuple(r), tuple(img)))
    inv = L.inverse(M.rows)
    pre_fails = []
    if inv is not None:
        for r in K.rays:
            pre = L.mat_vec(inv, r)
            if not K.contains(pre):
                pre_fails.append((tuple(r), tuple(pre)))
    if fails:
        invariance = "fails"
    elif inv is not None and not pre_fails:
        invariance = "exact-equality"
    else:
        invariance = "forward-only"
    return GoodConeCertificate(invariance, K.is_salient(), K.is_full_dimensional(), inv is not None,
                               tuple(fails), tuple(pre_fails))


def _require_good(M, K, allow_forward_only: bool) -> GoodConeCertificate:
    cert = validate_good_cone(M, K)
    if cert.ok:
        return cert
    if allow_forward_only and cert.ok_forward:
        log.warning("cone is only forward-invariant (M(K) inside K); results are experimental "
                    "and outside the scope of the exact-equality theory")
        return cert
    raise BadCone("cone is not a good invariant cone for the matrix: " + cert.describe(), cert)


# ---------------------------------------------------------------------------
# subspaces meeting the interior


@dataclass(frozen=True)
class InteriorMeet:
    """Either a witness in span(B) strictly inside K, or a separating covector."""

    witness: tuple | None
    coefficients: tuple | None = None
    separator: tuple | None = None
    weights: tuple | None = None

    @property
    def empty(self) -> bool:
        return self.witness is None

    def __bool__(self) -> bool:
        return self.witness is not None


def subspace_meets_interior(B: Sequence[Sequence], K: PolyhedralCone) -> InteriorMeet:
    """Decide whether span(B) meets the interior of K."""
    B = [list(b) for b in B]
    for b in B:
        if len(b) != K.ambient_dim:
            raise DimensionMismatch("basis vector length differs from the cone dimension")
    A = [[L.dot(f, b) for b in B] for f in K.facets]
    res = strict_feasibility(A, len(B))
    n = K.ambient_dim
    if res.feasible:
        x = res.point
        w = [sum((x[j] * B[j][i] for j in range(len(B))), Fraction(0)) for i in range(n)]
        return InteriorMeet(tuple(w), tuple(x))
    y = res.weights
    Z = [sum((y[i] * K.facets[i][j] for i in range(len(K.facets))), Fraction(0)) for j in range(n)]
    return InteriorMeet(None, None, tuple(Z), tuple(y))


def verify_meet(meet: InteriorMeet, B: Sequence[Sequence], K: PolyhedralCone) -> bool:
    """Re-check a witness or separator by exact substitution."""
    if meet.witness is not None:
        return K.interior_contains(meet.witness)
    Z = meet.separator
    if not any(Z):
        return False
    return all(not L.dot(Z, b) for b in B) and all(L.dot(Z, r) >= 0 for r in K.rays)


# ---------------------------------------------------------------------------
# alpha-amplification


@dataclass(frozen=True)
class AmplificationResult:
    alpha: RealAlgebraic
    amplified: bool
    witness: tuple | None = None  # N
    image: tuple | None = None  # (M - alpha) N
    separator: tuple | None = None  # Z with Z (M - alpha) = 0, Z >= 0 on K
    weights: tuple | None = None
    is_eigenvalue: bool = True
    field: NumberField | None = field(default=None, compare=False)
    forward_only: bool = False

    def verify(self, M, K: PolyhedralCone) -> bool:
        M = RationalMatrix.coerce(M)
        a = _alpha_in(self.alpha, self.field)
        Ma = L.shifted([list(r) for r in M.rows], a)
        if self.amplified:
            img = L.mat_vec(Ma, self.witness)
            return list(img) == list(self.image) and K.interior_contains(img)
        Z = self.separator
        if not any(Z):
            return False
        ZM = L.vec_mat(Z, Ma)
        return not any(ZM) and all(L.dot(Z, r) >= 0 for r in K.rays)

    def describe(self) -> str:
        if self.amplified:
            tail = "" if self.is_eigenvalue else " (amplified trivially outside Sp(M))"
            return f"alpha={self.alpha}: amplified, N={_fmt(self.witness)}{tail}"
        return f"alpha={self.alpha}: not amplified, separator Z={_fmt(self.separator)}"


def _alpha_in(alpha: RealAlgebraic, F: NumberField | None):
    if alpha.is_rational:
        return alpha.lo
    if F is None:
        F = field_of(alpha)
    if F.generator == alpha:
        return F.gen()
    return compositum([alpha])[1][0]


def _amplification(rows, K: PolyhedralCone, a) -> tuple:
    """Core test with alpha given as an element ``a`` of Q or of a number field."""
    n = len(rows)
    Ma = L.shifted([list(r) for r in rows], a)
    pivots = L.independent_columns(Ma)
    cols = [[Ma[i][j] for i in range(n)] for j in pivots]
    A = [[L.dot(f, c) for c in cols] for f in K.facets]
    res = strict_feasibility(A, len(cols))
    is_eig = len(pivots) < n
    if res.feasible:
        x = res.point
        N = [Fraction(0)] * n
        for xj, j in zip(x, pivots):
            N[j] = xj
        img = L.mat_vec(Ma, N)
        return True, tuple(N), tuple(img), None, None, is_eig
    y = res.weights
    Z = [sum((y[i] * K.facets[i][j] for i in range(len(K.facets))), Fraction(0)) for j in range(n)]
    return False, None, None, tuple(Z), tuple(y), is_eig


def is_alpha_amplified(M, K: PolyhedralCone, alpha, allow_forward_only: bool = False) -> AmplificationResult:
    """Decide whether (M - alpha) N lies in the interior of K for some N."""
    M = RationalMatrix.coerce(M)
    alpha = RealAlgebraic.coerce(alpha)
    if alpha.sign() <= 0:
        raise InvalidAlpha("alpha must be a positive real number")
    cert = _require_good(M, K, allow_forward_only)
    F = None if alpha.is_rational else field_of(alpha)
    a = alpha.lo if F is None else F.gen()
    amp, N, img, Z, y, is_eig = _amplification(M.rows, K, a)
    return AmplificationResult(alpha, amp, N, img, Z, y, is_eig, F, cert.invariance != "exact-equality")


@dataclass(frozen=True)
class SpectrumResult:
    members: tuple  # RealAlgebraic, ascending
    results: tuple  # AmplificationResult per positive real eigenvalue, ascending
    certificate: GoodConeCertificate | None = None

    def amplified(self) -> list[AmplificationResult]:
        return [r for r in self.results if r.amplified]

    def member_set(self) -> set:
        return set(self.members)


def cone_spectrum(M, K: PolyhedralCone, allow_forward_only: bool = False) -> SpectrumResult:
    """Positive real eigenvalues alpha of M for which M is not alpha-amplified."""
    M = RationalMatrix.coerce(M)
    cert = _require_good(M, K, allow_forward_only)
    results = []
    for alpha in spectrum(M).positive_real_values():
        F = None if alpha.is_rational else field_of(alpha)
        a = alpha.lo if F is None else F.gen()
        amp, N, img, Z, y, is_eig = _amplification(M.rows, K, a)
        results.append(AmplificationResult(alpha, amp, N, img, Z, y, is_eig, F,
                                           cert.invariance != "exact-equality"))
    members = tuple(r.alpha for r in results if not r.amplified)
    return SpectrumResult(members, tuple(results), cert)


# ---------------------------------------------------------------------------
# verification of the structural statements


@dataclass(frozen=True)
class SubsetRow:
    subset: tuple  # eigenvalue labels
    meets: bool
    contains_spectrum: bool
    certificate_ok: bool

    @property
    def consistent(self) -> bool:
        return self.meets == self.contains_spectrum and self.certificate_ok


@dataclass(frozen=True)
class SpectrumTheoremReport:
    members: tuple
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.consistent for r in self.rows)

    def lines(self) -> list[str]:
        out = ["Sp(M,K) = {" + ", ".join(str(m) for m in self.members) + "}"]
        for r in self.rows:
            out.append(f"S={{{', '.join(r.subset)}}} meets={r.meets} "
                       f"contains={r.contains_spectrum} {'ok' if r.consistent else 'MISMATCH'}")
        return out


def verify_spectrum_theorem(M, K: PolyhedralCone) -> SpectrumTheoremReport:
    """For each conjugation-closed S in Sp(M): E_S meets int K iff Sp(M,K) is inside S."""
    M = RationalMatrix.coerce(M)
    spec = spectrum(M)
    if len(spec.eigenvalues) > MAX_EIGENVALUES:
        raise TooManyEigenvalues(f"{len(spec.eigenvalues)} eigenvalues exceed the limit of {MAX_EIGENVALUES}")
    cs = cone_spectrum(M, K)
    member_idx = {spec.find_real(m).index for m in cs.members}
    units = spec.units()
    rows = []
    for mask in product((0, 1), repeat=len(units)):
        idx = [i for u, bit in zip(units, mask) if bit for i in u]
        E = generalized_eigenspace(M, [spec.eigenvalues[i] for i in idx])
        meet = subspace_meets_interior(E.basis, K)
        ok = verify_meet(meet, E.basis, K)
        labels = tuple(str(spec.eigenvalues[i]) for i in sorted(idx))
        rows.append(SubsetRow(labels, not meet.empty, member_idx <= set(idx), ok))
    return SpectrumTheoremReport(cs.members, tuple(rows))


@dataclass(frozen=True)
class IterateReport:
    n: int
    power_members: tuple
    lifted_members: tuple
    forward_checks: tuple  # (alpha, ok)
    backward_checks: tuple  # (beta, alpha, consistent, witness_ok)

    @property
    def sets_equal(self) -> bool:
        return set(self.power_members) == set(self.lifted_members) and \
            len(self.power_members) == len(self.lifted_members)

    @property
    def passed(self) -> bool:
        return (self.sets_equal and all(ok for _, ok in self.forward_checks)
                and all(c and w for _, _, c, w in self.backward_checks))


def _forward_witness(M, Mn, K: PolyhedralCone, res: AmplificationResult, n: int) -> bool:
    """sum_{j<n} alpha^(n-1-j) M^j L with L = (M - alpha) N equals (M^n - alpha^n) N and is interior.

    The weights alpha^(n-1-j) are needed for the identity unless alpha = 1; they are
    positive, so the sum stays interior."""
    rows = [list(r) for r in M.rows]
    a = _alpha_in(res.alpha, res.field)
    acc = [Fraction(0)] * M.n
    w = list(res.image)
    for j in range(n):
        coef = a ** (n - 1 - j)
        acc = [x + coef * y for x, y in zip(acc, w)]
        w = L.mat_vec(rows, w)
    direct = L.mat_vec(L.shifted([list(r) for r in Mn.rows], a ** n), list(res.witness))
    return K.interior_contains(acc) and list(acc) == list(direct)


def _backward_witness(M, Mn, K: PolyhedralCone, alpha: RealAlgebraic, n: int) -> tuple:
    """(consistent, witness_ok) for alpha^n: amplification of M^n and of M agree, and
    N' = sum_{j<n} alpha^{n-j} M^j N satisfies (M - alpha) N' = alpha (M^n - alpha^n) N."""
    rows = [list(r) for r in M.rows]
    F = None if alpha.is_rational else field_of(alpha)
    a = alpha.lo if F is None else F.gen()
    amp_n, N, img, *_ = _amplification(Mn.rows, K, a ** n)
    amp_1 = _amplification(M.rows, K, a)[0]
    if not amp_n:
        return amp_n == amp_1, True
    Np = [Fraction(0)] * M.n
    w = list(N)
    for j in range(n):
        coef = a ** (n - j)
        Np = [x + coef * y for x, y in zip(Np, w)]
        w = L.mat_vec(rows, w)
    lhs = L.mat_vec(L.shifted(rows, a), Np)
    rhs = [a * x for x in img]
    return amp_n == amp_1, K.interior_contains(lhs) and list(lhs) == list(rhs)


def iterate_spectrum_check(M, K: PolyhedralCone, n: int) -> IterateReport:
    """Compare Sp(M^n, K) with the n-th powers of Sp(M, K) and check both witness
    constructions linking amplification of M and of M^n."""
    if n < 1:
        raise ValueError("n must be positive")
    M = RationalMatrix.coerce(M)
    _require_good(M, K, False)
    Mn = M ** n
    base = cone_spectrum(M, K)
    power = cone_spectrum(Mn, K)
    lifted = tuple(sorted({m ** n for m in base.members}))
    forward = tuple((res.alpha, _forward_witness(M, Mn, K, res, n)) for res in base.amplified())
    backward = []
    for beta in spectrum(Mn).positive_real_values():
        alpha = beta.nth_root(n)
        backward.append((beta, alpha) + _backward_witness(M, Mn, K, alpha, n))
    return IterateReport(n, power.members, lifted, forward, tuple(backward))


def iterate_witness_check(M, K: PolyhedralCone, n: int, alphas: Sequence) -> IterateReport:
    """Both witness constructions at arbitrary positive alphas, eigenvalues or not."""
    if n < 1:
        raise ValueError("n must be positive")
    M = RationalMatrix.coerce(M)
    _require_good(M, K, False)
    Mn = M ** n
    forward, backward = [], []
    for alpha in alphas:
        res = is_alpha_amplified(M, K, alpha)
        if res.amplified:
            forward.append((res.alpha, _forward_witness(M, Mn, K, res, n)))
        backward.append((res.alpha ** n, res.alpha) + _backward_witness(M, Mn, K, res.alpha, n))
    return IterateReport(n, (), (), tuple(forward), tuple(backward))


@dataclass(frozen=True)
class RestrictionReport:
    restricted_matrix: RationalMatrix
    restricted_cone: PolyhedralCone
    full_members: tuple
    restricted_members: tuple

    @property
    def passed(self) -> bool:
        return set(self.full_members) == set(self.restricted_members) and \
            len(self.full_members) == len(self.restricted_members)


def restriction_spectrum_check(M, K: PolyhedralCone, V: Sequence[Sequence]) -> RestrictionReport:
    """Compare Sp(M, K) with the spectrum of M restricted to an invariant subspace V
    meeting the interior of K, relative to the induced cone K and V."""
    M = RationalMatrix.coerce(M)
    B = L.row_space_basis([[Fraction(x) if not isinstance(x, Fraction) else x for x in v] for v in V])
    if not B:
        raise NotInvariant("empty subspace")
    for b in B:
        if not L.in_span(B, L.mat_vec(M.rows, b)):
            raise NotInvariant(f"M maps {_fmt(b)} outside V")
    meet = subspace_meets_interior(B, K)
    if meet.empty:
        raise SubspaceMissesCone("V does not meet the interior of the cone")
    cols = L.transpose(B)
    MB = L.mat_mul(M.rows, cols)
    X = L.solve_matrix(cols, MB)
    MV = RationalMatrix(X)
    k = len(B)
    facets = [primitive([L.dot(f, b) for b in B]) for f in K.facets]
    facets = [f for f in facets if any(f)]
    KV = PolyhedralCone.from_facets(facets, k, provenance="derived")
    full = cone_spectrum(M, K)
    restricted = cone_spectrum(MV, KV)
    return RestrictionReport(MV, KV, full.members, restricted.members)
