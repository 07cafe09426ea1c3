from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conespec.degrees import (
    GradedPullbackSystem,
    SubsystemNode,
    ample_spectrum,
    big_spectrum,
    classify,
    contains_value,
    cross_check_big,
    dynamical_degrees,
    factor_consistency,
    node_contribution,
)
from conespec.errors import EmptyTree, InvalidSystem, LogConcavityViolated
from conespec.gallery import (
    gallery,
    identity_system,
    monomial_system,
    monomial_tree,
    point_system,
    projective_space_system,
    swap_system,
    swap_tree,
)
from conespec.kernel import RationalMatrix, RealAlgebraic

SQRT6 = RealAlgebraic.coerce(6).nth_root(2)


def profile(sys):
    p = dynamical_degrees(sys)
    return tuple(p.lambdas), tuple(p.mu(i) for i in range(1, sys.d + 2))


def test_profiles_of_the_examples():
    assert profile(projective_space_system(2, 2)) == ((1, 2, 4), (2, 2, 0))
    assert profile(monomial_system([2, 3])) == ((1, 3, 6), (3, 2, 0))
    assert profile(identity_system(3)) == ((1, 1, 1, 1), (1, 1, 1, 0))


def test_big_spectrum_examples():
    assert big_spectrum(monomial_system([2, 3])) == (2, 3)
    assert big_spectrum(projective_space_system(3, 5)) == (5,)
    assert big_spectrum(identity_system(2)) == (1,)
    assert big_spectrum(swap_system(2, 3)) == (SQRT6,)


def test_ample_spectrum_of_x2y3_tree():
    tree = monomial_tree([2, 3])
    res = ample_spectrum(tree)
    assert res.values == (2, 3)
    by_name = {n: (p, v) for n, p, v in res.contributions}
    assert by_name["(0,P1)"] == (1, (3,)) and by_name["(P1,0)"] == (1, (2,))
    assert by_name["(w,P1)"] == (2, (3,))
    for pt in ("(0,0)", "(0,inf)", "(inf,0)", "(inf,inf)"):
        assert by_name[pt] == (1, ())
    assert ample_spectrum(SubsystemNode("pt", 1, point_system(), ())).values == ()


def test_period_two_node_takes_the_square_root():
    node = SubsystemNode("V", 2, projective_space_system(1, 9), ())
    assert node_contribution(node) == (3,)


def test_tree_validation():
    with pytest.raises(EmptyTree):
        ample_spectrum(None)
    with pytest.raises(InvalidSystem):
        GradedPullbackSystem(1, (RationalMatrix.diag([1]),), None, None)


def test_log_concavity_violation_is_reported():
    bad = GradedPullbackSystem(2, (RationalMatrix.diag([1]), RationalMatrix.diag([2, 2]),
                                   RationalMatrix.diag([9])), None, None)
    with pytest.raises(LogConcavityViolated):
        dynamical_degrees(bad)


def test_classify_examples():
    c = classify(monomial_system([2, 3]), monomial_tree([2, 3]))
    assert (c.hyperbolic, c.quasi_amplified, c.amplified, c.int_amplified) == (True, True, True, True)
    xy2 = monomial_system([1, 2])
    assert profile(xy2) == ((1, 2, 2), (2, 1, 0))
    c2 = classify(xy2)
    assert not c2.hyperbolic and not c2.quasi_amplified and c2.hyperbolic_witness == (2, 1)
    c3 = classify(identity_system(2))
    assert not any([c3.hyperbolic, c3.quasi_amplified, bool(c3.amplified), c3.int_amplified])


def test_factor_consistency_examples():
    src = monomial_tree([2, 3])
    bad = factor_consistency(src, monomial_tree([5]))
    assert not bad.passed and ("ample", RealAlgebraic.coerce(5)) in bad.violations
    assert factor_consistency(src, monomial_tree([2])).passed


def test_cross_check_big_on_the_gallery():
    for name, (sys, _tree) in gallery().items():
        if sys.big_model is not None:
            assert cross_check_big(sys).passed, name


def test_swap_tree_has_period_two_curves():
    tree = swap_tree(2, 3)
    assert any(n.period == 2 for n in tree.walk())
    assert ample_spectrum(tree).values == (SQRT6,)


# properties --------------------------------------------------------------------

exponents = st.lists(st.integers(1, 6), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(exponents)
def test_mu_is_non_increasing(ex):
    _, mus = profile(monomial_system(ex))
    assert all(a >= b for a, b in zip(mus, mus[1:]))


@settings(max_examples=40, deadline=None)
@given(exponents)
def test_monomial_big_spectrum_is_the_exponent_set(ex):
    assert big_spectrum(monomial_system(ex)) == tuple(sorted(set(ex)))


@settings(max_examples=30, deadline=None)
@given(exponents)
def test_big_spectrum_is_inside_the_ample_spectrum(ex):
    ample = ample_spectrum(monomial_tree(ex)).values
    assert all(contains_value(ample, v) for v in big_spectrum(monomial_system(ex)))


@settings(max_examples=30, deadline=None)
@given(exponents, st.randoms(use_true_random=False))
def test_ample_spectrum_ignores_child_order(ex, rnd):
    tree = monomial_tree(ex)

    def shuffled(node):
        kids = [shuffled(c) for c in node.children]
        rnd.shuffle(kids)
        return SubsystemNode(node.name, node.period, node.system, tuple(kids))

    assert ample_spectrum(shuffled(tree)).values == ample_spectrum(tree).values


@settings(max_examples=30, deadline=None)
@given(exponents)
def test_quasi_amplified_iff_hyperbolic(ex):
    sys = monomial_system(ex)
    _, mus = profile(sys)
    c = classify(sys)
    assert c.quasi_amplified == (not contains_value(mus[:-1], 1)) == c.hyperbolic
