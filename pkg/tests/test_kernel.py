from fractions import Fraction

import math

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from conespec.errors import SNotConjugationClosed, SpectrumNotPositiveReal, ZeroVector
from conespec.kernel import (
    RationalMatrix,
    RealAlgebraic,
    algebraic_sign,
    certified_spectrum,
    char_poly,
    generalized_eigenspace,
    growth_rate,
    growth_signature,
    spectral_radius,
)
from conespec.kernel import linalg as L

F = Fraction
DIAG23 = RationalMatrix.diag([2, 3])
JORDAN2 = RationalMatrix(((F(2), F(1)), (F(0), F(2))))
FIB = RationalMatrix(((F(0), F(1)), (F(1), F(1))))
ROT = RationalMatrix(((F(0), F(-1)), (F(1), F(0))))
GOLDEN = RealAlgebraic.roots_of_irreducible((F(-1), F(-1), F(1)))[-1]


def test_char_poly_examples():
    assert char_poly(DIAG23) == (6, -5, 1)
    assert char_poly(JORDAN2) == (4, -4, 1)
    assert char_poly(FIB) == (-1, -1, 1)


def test_char_poly_matches_sympy():
    M = [[F(1, 2), 3, -1], [0, 2, F(5, 3)], [4, -2, 1]]
    t = sympy.Symbol("t")
    want = sympy.Poly(sympy.Matrix(M).charpoly(t).as_expr(), t).all_coeffs()[::-1]
    assert list(char_poly(M)) == [F(int(c.p), int(c.q)) for c in want]


def test_spectrum_of_diagonal():
    spec = certified_spectrum(DIAG23)
    got = sorted((e.value, e.multiplicity, e.kind) for e in spec.eigenvalues)
    assert got == [(2, 1, "real"), (3, 1, "real")]


def test_spectrum_of_golden_companion():
    spec = certified_spectrum(FIB)
    vals = sorted(e.value for e in spec.eigenvalues)
    lo, hi = vals
    assert F(-618035, 10 ** 6) <= lo.lo and lo.hi <= F(-618033, 10 ** 6)
    assert F(1618033, 10 ** 6) <= hi.lo and hi.hi <= F(1618035, 10 ** 6)


def test_spectrum_of_rotation():
    spec = certified_spectrum(ROT)
    assert [e.kind for e in spec.eigenvalues] == ["complex", "complex"]
    assert spec.eigenvalues[0].conjugate == 1
    assert all(e.modulus() == 1 for e in spec.eigenvalues)
    assert spec.positive_real_values() == []


def test_algebraic_sign_examples():
    assert algebraic_sign([-1, -1, 1], GOLDEN) == 0
    assert algebraic_sign([F(-3, 2), 1], GOLDEN) == 1
    assert algebraic_sign([0, -1], GOLDEN) == -1


def test_generalized_eigenspace_examples():
    assert generalized_eigenspace(DIAG23, [2]).dim == 1
    assert L.rank([list(b) for b in generalized_eigenspace(DIAG23, [2]).basis] + [[1, 0]]) == 1
    assert generalized_eigenspace(JORDAN2, [2]).dim == 2
    E = generalized_eigenspace(RationalMatrix.diag([2, 3, 5]), [2, 5])
    assert L.rank([list(b) for b in E.basis] + [[1, 0, 0], [0, 0, 1]]) == 2


def test_generalized_eigenspace_rejects_split_pair():
    spec = certified_spectrum(ROT)
    with pytest.raises(SNotConjugationClosed):
        generalized_eigenspace(ROT, [spec.eigenvalues[0]])


def test_growth_rate_examples():
    assert growth_rate(DIAG23, [1, 1]) == 3
    assert growth_rate(DIAG23, [1, 0]) == 2
    two_rot = RationalMatrix(((F(0), F(-2)), (F(2), F(0))))
    assert growth_rate(two_rot, [1, 0]) == 2
    with pytest.raises(ZeroVector):
        growth_rate(DIAG23, [0, 0])


def test_growth_signature_examples():
    assert growth_signature(DIAG23, [1, 1], [1, 1]).as_tuple() == (3, 0, "+")
    assert growth_signature(JORDAN2, [0, 1], [1, 1]).as_tuple() == (2, 1, "+")
    assert growth_signature(DIAG23, [1, -1], [1, 1]).as_tuple() == (3, 0, "-")
    with pytest.raises(SpectrumNotPositiveReal):
        growth_signature(ROT, [1, 0], [1, 1])


def test_spectral_radius():
    assert spectral_radius(FIB) == GOLDEN
    assert spectral_radius(ROT) == 1


def test_nth_root_and_equality():
    r = RealAlgebraic.coerce(6).nth_root(2)
    assert r.minpoly == (-6, 0, 1) and r > 2
    assert RealAlgebraic.coerce(9).nth_root(2) == 3


# properties --------------------------------------------------------------------

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@settings(max_examples=25, deadline=None)
@given(matrices(2), matrices(2))
def test_char_poly_of_block_diagonal_is_product(A, B):
    M = RationalMatrix.coerce(A).block_diag(RationalMatrix.coerce(B))
    pa, pb = char_poly(A), char_poly(B)
    prod = [F(0)] * (len(pa) + len(pb) - 1)
    for i, a in enumerate(pa):
        for j, b in enumerate(pb):
            prod[i + j] += a * b
    assert list(char_poly(M)) == prod


@settings(max_examples=25, deadline=None)
@given(matrices(3))
def test_conjugation_closed_partition_splits_space(A):
    spec = certified_spectrum(A)
    units = spec.units()
    if len(units) < 2:
        return
    first = [spec.eigenvalues[i] for i in units[0]]
    rest = [spec.eigenvalues[i] for u in units[1:] for i in u]
    E1, E2 = generalized_eigenspace(A, first), generalized_eigenspace(A, rest)
    assert E1.dim + E2.dim == 3
    if E1.is_rational() and E2.is_rational():
        assert L.rank([list(b) for b in E1.basis + E2.basis]) == 3


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=1, max_size=4), st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_sign_is_antisymmetric(expr, shift):
    if not any(expr):
        return
    s = algebraic_sign(expr, GOLDEN)
    assert algebraic_sign([-c for c in expr], GOLDEN) == -s


def _log_norms(A, v, steps):
    """log of the Euclidean norm of M^n v for n = 0..steps, by normalized power iteration."""
    M = [[float(x) for x in row] for row in A]
    w = [float(x) for x in v]
    acc, out = 0.0, []
    for _ in range(steps + 1):
        nrm = math.sqrt(sum(x * x for x in w))
        if nrm == 0:
            return None
        acc += math.log(nrm)
        out.append(acc)
        w = [sum(M[i][j] * w[j] / nrm for j in range(len(w))) for i in range(len(w))]
    return out


def _windowed_rate(lg, window=8):
    """Growth rate from two windows of squared norms, which cancels constants and phases."""
    n = len(lg) - 1

    def energy(k):
        base = lg[k]
        return base + math.log(sum(math.exp(2 * (lg[j] - base)) for j in range(k, k + window))) / 2

    return math.exp((energy(n - window + 1) - energy(0)) / (n - window + 1))


def _observed_vs_exact(A, v, steps):
    lg = _log_norms(A, v, steps)
    r = float(growth_rate(A, v).refine(F(1, 10 ** 12)).hi)
    if lg is None or r == 0:
        return None
    return _windowed_rate(lg), r


int_matrices = st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4)
int_vectors = st.lists(st.integers(-3, 3), min_size=4, max_size=4).filter(any)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(int_matrices, int_vectors)
def test_growth_rate_is_the_limit_of_normalized_iteration(A, v):
    got = _observed_vs_exact(A, v, 600)
    assume(got is not None)
    observed, r = got
    assert abs(observed - r) <= r / 100


@pytest.mark.xfail(strict=False, reason="60 iterations do not reach 1% on every random 4x4 matrix; "
                                        "see the decisions ledger")
def test_growth_rate_within_one_percent_after_sixty_iterations():
    import random
    rng = random.Random(1)
    misses = []
    for _ in range(200):
        A = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        v = [rng.randint(-3, 3) for _ in range(4)]
        got = _observed_vs_exact(A, v, 60) if any(v) else None
        if got and abs(got[0] - got[1]) > got[1] / 100:
            misses.append((A, v, got))
    assert not misses, f"{len(misses)} of 200 instances outside 1%"


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=2, max_size=3, unique=True))
def test_growth_signature_maximal_vectors_are_generic(entries):
    M = RationalMatrix.diag(entries)
    n = len(entries)
    Z = [1] * n
    sigs = {}
    for v in ([1 if j == k else 0 for j in range(n)] for k in range(n)):
        sigs[tuple(v)] = growth_signature(M, v, Z)
    top = max((s.beta, s.a) for s in sigs.values())
    lower = [list(v) for v, s in sigs.items() if (s.beta, s.a) < top]
    assert L.rank(lower) < n if lower else True
