"""Certified spectra of rational matrices and the subspaces attached to them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from ..errors import (
    NotAnEigenvalue,
    SNotConjugationClosed,
    SpectrumNotPositiveReal,
    ZeroSequence,
    ZeroVector,
)
from . import linalg as L
from . import poly as P
from .algebraic import ComplexAlgebraic, RealAlgebraic
from .numberfield import NFElement, NumberField, compositum, field_of

DEFAULT_WIDTH = Fraction(1, 1 << 64)
_WORK_WIDTH = Fraction(1, 1 << 8)


@dataclass(frozen=True)
class Eigenvalue:
    index: int
    factor: tuple
    multiplicity: int
    kind: str  # "real" or "complex"
    value: RealAlgebraic | ComplexAlgebraic
    conjugate: int | None = None

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    @property
    def is_positive_real(self) -> bool:
        return self.is_real and self.value.sign() > 0

    @property
    def box(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        if self.is_real:
            return (self.value.lo, self.value.hi, Fraction(0), Fraction(0))
        return self.value.box

    def modulus(self) -> RealAlgebraic:
        if self.is_real:
            return abs(self.value)
        return _complex_modulus(self.value)

    def __str__(self) -> str:
        return str(self.value)

    def to_json(self) -> dict:
        out = {"index": self.index, "factor": [str(c) for c in self.factor],
               "multiplicity": self.multiplicity, "kind": self.kind}
        out.update(self.value.to_json())
        if self.conjugate is not None:
            out["conjugate"] = self.conjugate
        return out


@lru_cache(maxsize=4096)
def _complex_modulus(z: ComplexAlgebraic) -> RealAlgebraic:
    return z.modulus()


@dataclass(frozen=True)
class CertifiedSpectrum:
    char_poly: tuple
    factors: tuple  # ((irreducible monic factor, multiplicity), ...)
    eigenvalues: tuple

    def __iter__(self):
        return iter(self.eigenvalues)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def real(self) -> list[Eigenvalue]:
        return [e for e in self.eigenvalues if e.is_real]

    def positive_real(self) -> list[Eigenvalue]:
        return [e for e in self.eigenvalues if e.is_positive_real]

    def positive_real_values(self) -> list[RealAlgebraic]:
        return sorted(e.value for e in self.positive_real())

    def units(self) -> list[tuple[int, ...]]:
        """Minimal conjugation-closed groups of eigenvalue indices."""
        out = []
        for e in self.eigenvalues:
            if e.is_real:
                out.append((e.index,))
            elif e.value.upper:
                out.append((e.index, e.conjugate))
        return out

    def find_real(self, value) -> Eigenvalue:
        value = RealAlgebraic.coerce(value)
        for e in self.eigenvalues:
            if e.is_real and e.value == value:
                return e
        raise NotAnEigenvalue(f"{value} is not an eigenvalue")

    def select(self, S: Iterable) -> frozenset[int]:
        """Indices of a selection given as Eigenvalue objects, indices or real values;
        raises SNotConjugationClosed if a conjugate pair is split."""
        idx = set()
        for s in S:
            if isinstance(s, Eigenvalue):
                idx.add(s.index)
            else:
                idx.add(self.find_real(s).index)
        for i in idx:
            e = self.eigenvalues[i]
            if e.conjugate is not None and e.conjugate not in idx:
                raise SNotConjugationClosed(f"selection contains {e} but not its conjugate")
        return frozenset(idx)

    def spectral_radius(self) -> RealAlgebraic:
        best = None
        for q, _ in self.factors:
            r = max_modulus(q)
            if best is None or r > best:
                best = r
        return best

    def to_json(self) -> dict:
        return {"char_poly": [str(c) for c in self.char_poly],
                "eigenvalues": [e.to_json() for e in self.eigenvalues]}


@lru_cache(maxsize=2048)
def _roots_of_factor(q: tuple) -> tuple:
    reals = RealAlgebraic.roots_of_irreducible(q)
    cplx = ComplexAlgebraic.roots_of_irreducible(q) if len(reals) < len(q) - 1 else []
    if len(reals) + len(cplx) != len(q) - 1:
        raise AssertionError("root count mismatch for irreducible factor")
    return tuple(reals), tuple(cplx)


@lru_cache(maxsize=2048)
def max_modulus(q: tuple) -> RealAlgebraic:
    """Largest modulus of a root of the irreducible polynomial q."""
    reals, cplx = _roots_of_factor(q)
    cands = [abs(r) for r in reals] + [_complex_modulus(z) for z in cplx[::2]]
    return max(cands)


@lru_cache(maxsize=512)
def _spectrum_cached(rows: tuple, width: Fraction) -> CertifiedSpectrum:
    cp = L.char_poly_of_rows(rows)
    factors = P.factor(cp)
    eigs: list[Eigenvalue] = []
    for q, e in factors:
        reals, cplx = _roots_of_factor(q)
        for r in reals:
            eigs.append(Eigenvalue(len(eigs), q, e, "real", r.refine(width)))
        for k in range(0, len(cplx), 2):
            i = len(eigs)
            eigs.append(Eigenvalue(i, q, e, "complex", cplx[k].refine(width), i + 1))
            eigs.append(Eigenvalue(i + 1, q, e, "complex", cplx[k + 1].refine(width), i))
    return CertifiedSpectrum(cp, factors, tuple(eigs))


def certified_spectrum(M, width=DEFAULT_WIDTH) -> CertifiedSpectrum:
    """Exact factorization of the characteristic polynomial with every root isolated
    to a box of diameter at most ``width``."""
    width = P.as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    M = L.RationalMatrix.coerce(M)
    return _spectrum_cached(M.rows, width)


def spectrum(M) -> CertifiedSpectrum:
    """Working-precision spectrum used internally (boxes refined lazily on demand)."""
    return certified_spectrum(M, _WORK_WIDTH)


def spectral_radius(M) -> RealAlgebraic:
    return spectrum(M).spectral_radius()


# ---------------------------------------------------------------------------
# generalized eigenspaces


@dataclass(frozen=True)
class EigenSubspace:
    """Basis of a real subspace; entries are Fractions or elements of ``field``."""

    basis: tuple
    field: NumberField | None = None
    dim_ambient: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_rational(self) -> bool:
        return self.field is None


@lru_cache(maxsize=1024)
def _rational_primary_kernel(rows: tuple, q: tuple, e: int) -> tuple:
    Q = L.mat_pow(L.poly_of_matrix(q, rows), e)
    return tuple(tuple(v) for v in L.nullspace(Q))


@lru_cache(maxsize=1024)
def _rational_primary_image(rows: tuple, q: tuple, e: int) -> tuple:
    Q = L.mat_pow(L.poly_of_matrix(q, rows), e)
    return tuple(tuple(v) for v in L.column_space(Q))


def generalized_eigenspace(M, S: Iterable) -> EigenSubspace:
    """Basis of E_S, the real part of the sum of generalized eigenspaces over S."""
    M = L.RationalMatrix.coerce(M)
    spec = spectrum(M)
    idx = spec.select(S)
    n = M.n
    full: list[tuple[tuple, int]] = []
    partial: list[tuple[tuple, int, list[Eigenvalue]]] = []
    for q, e in spec.factors:
        members = [ev for ev in spec.eigenvalues if ev.factor == q]
        chosen = [ev for ev in members if ev.index in idx]
        if not chosen:
            continue
        if len(chosen) == len(members):
            full.append((q, e))
        else:
            partial.append((q, e, chosen))

    basis: list = []
    for q, e in full:
        basis.extend(list(v) for v in _rational_primary_kernel(M.rows, q, e))

    F = None
    if partial:
        gens: list[RealAlgebraic] = []
        layout = []
        for q, e, chosen in partial:
            spec_items = []
            for ev in chosen:
                if ev.is_real:
                    spec_items.append(("lin", len(gens)))
                    gens.append(ev.value)
                elif ev.value.upper:
                    spec_items.append(("quad", len(gens)))
                    gens.append(ev.value.trace())
                    gens.append(ev.value.modulus_squared())
            layout.append((e, spec_items))
        F, imgs = compositum(gens)
        for e, items in layout:
            poly_c: list = [Fraction(1)]
            for kind, j in items:
                if kind == "lin":
                    fac = [-imgs[j], Fraction(1)]
                else:
                    fac = [imgs[j + 1], -imgs[j], Fraction(1)]
                poly_c = _poly_mul_generic(poly_c, fac)
            A = L.mat_pow(L.poly_of_matrix(poly_c, [list(r) for r in M.rows]), e)
            basis.extend(L.nullspace(A))
    expected = sum(spec.eigenvalues[i].multiplicity for i in idx)
    if len(basis) != expected:
        raise AssertionError(f"generalized eigenspace has dimension {len(basis)}, expected {expected}")
    return EigenSubspace(tuple(tuple(v) for v in basis), F, n)


def _poly_mul_generic(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


# ---------------------------------------------------------------------------
# growth


def growth_rate(M, v: Sequence) -> RealAlgebraic:
    """Minimal r with v in the sum of generalized eigenspaces of eigenvalues of modulus <= r."""
    M = L.RationalMatrix.coerce(M)
    v = [P.as_fraction(x) for x in v]
    if not any(v):
        raise ZeroVector("growth rate of the zero vector is undefined")
    spec = spectrum(M)
    best = None
    for q, e in spec.factors:
        image = _rational_primary_image(M.rows, q, e)
        # the q-primary component of v vanishes iff v lies in the image of q(M)^e
        if L.in_span([list(b) for b in image], v):
            continue
        r = max_modulus(q)
        if best is None or r > best:
            best = r
    return best


@dataclass(frozen=True)
class GrowthSignature:
    beta: RealAlgebraic
    a: int
    sign: int
    leading_coeff: object = field(default=None, compare=False)

    def as_tuple(self):
        return (self.beta, self.a, "+" if self.sign > 0 else "-")


def growth_signature(M, v: Sequence, Z: Sequence) -> GrowthSignature:
    """Dominant (beta, a) and the sign of C for n -> Z . M^n v = C beta^n n^a + lower order."""
    M = L.RationalMatrix.coerce(M)
    v = [P.as_fraction(x) for x in v]
    Z = [P.as_fraction(x) for x in Z]
    spec = spectrum(M)
    for q, _ in spec.factors:
        reals, _c = _roots_of_factor(q)
        if len(reals) != len(q) - 1 or reals[0].sign() <= 0:
            raise SpectrumNotPositiveReal(f"factor {P.to_str(q)} has a root that is not a positive real")
    n = M.n
    best = None
    for q, e in spec.factors:
        c = _roots_of_factor(q)[0][-1]
        if c.is_rational:
            cval = c.lo
        else:
            cval = field_of(c).gen()
        N = L.shifted([list(r) for r in M.rows], cval)
        Ne = L.mat_pow(N, e)
        K = L.nullspace(Ne)
        I = L.column_space(Ne)
        A = L.transpose(K + I)
        x = L.solve(A, v)
        if x is None:
            raise AssertionError("primary decomposition failed to span")
        vc = [sum((x[j] * K[j][i] for j in range(len(K))), Fraction(0)) for i in range(n)]
        vals = []
        w = vc
        for k in range(e):
            vals.append(L.dot(Z, w))
            w = L.mat_vec(N, w)
        ks = [k for k, val in enumerate(vals) if val]
        if not ks:
            continue
        a = ks[-1]
        cand = (c, a, vals[a])
        if best is None or (c > best[0]) or (c == best[0] and a > best[1]):
            best = cand
    if best is None:
        raise ZeroSequence("the sequence Z . M^n v vanishes identically")
    c, a, val = best
    lead = val / (factorial(a) * (c.lo if c.is_rational else field_of(c).gen()) ** a)
    s = lead.sign() if isinstance(lead, NFElement) else (1 if lead > 0 else -1)
    return GrowthSignature(c, a, s, lead)
