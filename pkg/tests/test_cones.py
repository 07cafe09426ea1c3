from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conespec.cones import (
    PolyhedralCone,
    cone_spectrum,
    is_alpha_amplified,
    iterate_spectrum_check,
    iterate_witness_check,
    restriction_spectrum_check,
    strict_feasibility,
    subspace_meets_interior,
    validate_good_cone,
    verify_meet,
    verify_spectrum_theorem,
)
from conespec.errors import BadCone, NotInvariant, SubspaceMissesCone, TooManyEigenvalues
from conespec.kernel import RationalMatrix, RealAlgebraic

F = Fraction
Q2 = PolyhedralCone.orthant(2)
DIAG23 = RationalMatrix.diag([2, 3])
SWAP = RationalMatrix(((F(0), F(2)), (F(3), F(0))))
ROT = RationalMatrix(((F(0), F(-1)), (F(1), F(0))))
SQRT6 = RealAlgebraic.coerce(6).nth_root(2)


def test_cone_rays_and_facets_agree():
    K = PolyhedralCone.from_rays([[1, 0], [1, 1]])
    assert K.contains([2, 1]) and not K.contains([0, 1])
    assert K.interior_contains([3, 1]) and not K.interior_contains([1, 0])
    assert PolyhedralCone.from_facets(K.facets, 2) == K
    assert K.dual().dual() == K


def test_validate_good_cone_examples():
    cert = validate_good_cone(DIAG23, Q2)
    assert cert.invariance == "exact-equality" and cert.salient and cert.full_dim and cert.ok
    rot = validate_good_cone(ROT, Q2)
    assert rot.invariance == "fails" and rot.witness_failures
    ray, img = rot.witness_failures[0]
    assert not Q2.contains(img)
    line = PolyhedralCone.from_rays([[1, 0], [-1, 0], [0, 1]])
    assert not validate_good_cone(RationalMatrix.identity(2), line).salient


def test_subspace_meets_interior_examples():
    hit = subspace_meets_interior([[1, 1]], Q2)
    assert not hit.empty and verify_meet(hit, [[1, 1]], Q2)
    miss = subspace_meets_interior([[1, -1]], Q2)
    assert miss.empty and verify_meet(miss, [[1, -1]], Q2)
    assert tuple(x / miss.separator[0] for x in miss.separator) == (1, 1)
    assert subspace_meets_interior([[1, 0]], Q2).empty


def test_is_alpha_amplified_examples():
    r = is_alpha_amplified(DIAG23, Q2, F(5, 2))
    assert r.amplified and r.verify(DIAG23, Q2)
    N = r.witness
    img = [2 * N[0] - F(5, 2) * N[0], 3 * N[1] - F(5, 2) * N[1]]
    assert all(x > 0 for x in img)
    # the stated witness (-1, 1) is amplified too
    assert Q2.interior_contains([2 * -1 - F(5, 2) * -1, 3 - F(5, 2)])
    r3 = is_alpha_amplified(DIAG23, Q2, 3)
    assert not r3.amplified and r3.verify(DIAG23, Q2)
    r1 = is_alpha_amplified(RationalMatrix.identity(2), Q2, 1)
    assert not r1.amplified and r1.verify(RationalMatrix.identity(2), Q2)


def test_cone_spectrum_examples():
    assert cone_spectrum(RationalMatrix.diag([2, 3, 5]), PolyhedralCone.orthant(3)).members == (2, 3, 5)
    assert cone_spectrum(RationalMatrix.identity(3), PolyhedralCone.orthant(3)).members == (1,)
    res = cone_spectrum(SWAP, Q2)
    assert res.members == (SQRT6,)
    assert all(r.verify(SWAP, Q2) for r in res.results)


def test_bad_cone_is_rejected():
    with pytest.raises(BadCone):
        cone_spectrum(ROT, Q2)


def test_spectrum_theorem_examples():
    rep = verify_spectrum_theorem(DIAG23, Q2)
    assert rep.passed and len(rep.rows) == 4
    rows = {tuple(sorted(r.subset)): r for r in rep.rows}
    assert not rows[("2",)].meets and not rows[("2",)].contains_spectrum
    assert rows[("2", "3")].meets and rows[("2", "3")].contains_spectrum
    assert verify_spectrum_theorem(RationalMatrix.identity(2), Q2).passed
    rep3 = verify_spectrum_theorem(RationalMatrix.diag([2, 3, 5]), PolyhedralCone.orthant(3))
    assert rep3.passed and len(rep3.rows) == 8


def test_spectrum_theorem_guard():
    M = RationalMatrix.diag(list(range(1, 14)))
    with pytest.raises(TooManyEigenvalues):
        verify_spectrum_theorem(M, PolyhedralCone.orthant(13))


def test_iterate_spectrum_examples():
    rep = iterate_spectrum_check(DIAG23, Q2, 2)
    assert rep.passed and rep.power_members == (4, 9)
    assert iterate_spectrum_check(RationalMatrix.identity(2), Q2, 5).power_members == (1,)
    sw = iterate_spectrum_check(SWAP, Q2, 2)
    assert sw.passed and sw.power_members == (6,) and sw.lifted_members == (6,)


def test_iterate_witnesses_off_the_spectrum():
    rep = iterate_witness_check(DIAG23, Q2, 3, [F(5, 2), 7, F(1, 3)])
    assert len(rep.forward_checks) == 3 and all(ok for _, ok in rep.forward_checks)
    assert all(c and w for _, _, c, w in rep.backward_checks)
    # alpha = 5/2: (M^3 - alpha^3) N is the alpha-weighted sum of M^j L, not the plain sum
    res = is_alpha_amplified(DIAG23, Q2, F(5, 2))
    Lv = res.image
    plain = [sum(d ** j * x for j in range(3)) for d, x in zip((2, 3), Lv)]
    direct = [(d ** 3 - F(5, 2) ** 3) * x for d, x in zip((2, 3), res.witness)]
    assert plain != direct


def test_restriction_examples():
    with pytest.raises(SubspaceMissesCone):
        restriction_spectrum_check(RationalMatrix.diag([2, 3, 5]), PolyhedralCone.orthant(3), [[1, 0, 0], [0, 1, 0]])
    assert restriction_spectrum_check(DIAG23, Q2, [[1, 0], [0, 1]]).passed
    M = DIAG23.block_diag(DIAG23)
    rep = restriction_spectrum_check(M, PolyhedralCone.orthant(4), [[1, 0, 1, 0], [0, 1, 0, 1]])
    assert rep.passed and rep.restricted_members == (2, 3)
    with pytest.raises(NotInvariant):
        restriction_spectrum_check(SWAP, Q2, [[1, 0]])


def test_strict_feasibility_both_routes():
    res = strict_feasibility([[1, 0], [0, 1], [-1, -1]], 2)
    assert not res.feasible
    ok = strict_feasibility([[1, 0], [0, 1]], 2)
    assert ok.feasible and all(x > 0 for x in ok.point)


# properties --------------------------------------------------------------------

pos = st.fractions(min_value=F(1, 4), max_value=8, max_denominator=4).filter(lambda x: x > 0)


@settings(max_examples=25, deadline=None)
@given(st.lists(pos, min_size=1, max_size=4), pos)
def test_scaling_invariance(entries, c):
    M = RationalMatrix.diag(entries)
    K = PolyhedralCone.orthant(len(entries))
    base = cone_spectrum(M, K).members
    scaled = cone_spectrum(RationalMatrix.diag([c * a for a in entries]), K).members
    assert scaled == tuple(sorted({RealAlgebraic.coerce(c * b.lo) for b in base}))


@settings(max_examples=25, deadline=None)
@given(st.lists(pos, min_size=1, max_size=4))
def test_spectrum_is_positive_real_and_certificates_verify(entries):
    M = RationalMatrix.diag(entries)
    K = PolyhedralCone.orthant(len(entries))
    res = cone_spectrum(M, K)
    assert all(m.sign() > 0 for m in res.members)
    assert all(r.verify(M, K) for r in res.results)


@settings(max_examples=15, deadline=None)
@given(pos, pos, st.integers(1, 4), st.integers(1, 4))
def test_spectrum_decreases_with_the_cone(a, b, p, q):
    """A smaller good cone has a larger spectrum."""
    M = RationalMatrix.diag([a, a, b])
    K2 = PolyhedralCone.orthant(3)
    K1 = PolyhedralCone.from_rays([[q, p + q, 0], [p + q, q, 0], [0, 0, 1]])
    assert K2.contains_cone(K1)
    assert set(cone_spectrum(M, K2).members) <= set(cone_spectrum(M, K1).members)


@settings(max_examples=20, deadline=None)
@given(st.permutations(range(3)), st.lists(pos, min_size=3, max_size=3))
def test_spectrum_theorem_on_permutation_scale(perm, scales):
    rows = [[F(0)] * 3 for _ in range(3)]
    for i in range(3):
        rows[i][perm[i]] = scales[i]
    M = RationalMatrix(tuple(tuple(r) for r in rows))
    assert verify_spectrum_theorem(M, PolyhedralCone.orthant(3)).passed
