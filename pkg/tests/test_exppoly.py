import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conespec.errors import (ArityMismatch, EmptyTarget, NotConjugationClosed, PositivityViolated,
                             ZeroAngleTerm, ZeroSequence)
from conespec.exppoly import (ExpPoly, cesaro_check, cos_pair, declared_rate_diagnostic, dominant_signature, evaluate,
                              negative_value_search, q_lower_bound_check, region_bound_check,
                              region_points, split_dominant, term, torus_closure, visit_bound)
from conespec.kernel import RationalMatrix, growth_signature

F = Fraction


def test_eval_examples():
    assert evaluate(ExpPoly([term(1, 2), term(1, 1, F(1, 2))]), 3).exact == 7
    assert evaluate(ExpPoly([term(1, 3, 0, 0, 2, 0, 0)]), 2, 1).exact == 18
    v = evaluate(ExpPoly(cos_pair(2, 2, F(1, 3))), 1)
    assert v.exact == -2 and v.order % 3 == 0


def test_eval_arity_is_checked():
    h = ExpPoly([term(1, 2)])
    with pytest.raises(ArityMismatch):
        evaluate(h, 1, 1)
    with pytest.raises(ArityMismatch):
        evaluate(ExpPoly([term(1, 3, 0, 0, 2, 0, 0)]), 1)


def test_eval_of_irrational_value_is_a_tight_enclosure():
    v = evaluate(ExpPoly(cos_pair(2, 1, F(1, 8))), 1)
    assert v.exact is None and v.hi - v.lo <= F(1, 1 << 64)
    assert v.lo < F(2) * F(70711, 10 ** 5) < v.hi + F(1, 10 ** 5)


def test_conjugation_is_required():
    with pytest.raises(NotConjugationClosed):
        ExpPoly([term(1, 2, F(1, 3))])


def test_dominant_signature_examples():
    h = ExpPoly([term(1, 3, 0, 0, 2, 0, 0), term(1, 3, 0, 1, 1, 0, 0)])
    assert dominant_signature(h).as_tuple() == (3, 2, 0, 0)
    sig = dominant_signature(ExpPoly([term(1, 2), term(1, 1, F(1, 2))]))
    assert sig.as_tuple() == (2, 0) and [t.u_mod for t in sig.plus_terms] == [2]
    assert dominant_signature(ExpPoly([term(1, 5, 0, 2), term(1, 5, 0, 1)])).as_tuple() == (5, 2)
    with pytest.raises(ZeroSequence):
        dominant_signature(ExpPoly([term(1, 2), term(-1, 2)]))


def test_split_dominant_recombines():
    h = ExpPoly([term(1, 3), term(4, 2)] + cos_pair(1, 3, F(1, 4)))
    plus, minus = split_dominant(h)
    assert ExpPoly(list(plus) + list(minus)) == h
    assert all(t.u_mod == 3 for t in plus) and all(t.u_mod == 2 for t in minus)


def test_region_single_term_has_constant_one():
    r = region_bound_check(ExpPoly([term(1, 3, 0, 0, 2, 0, 0)]), F(1, 2), 10 ** 4)
    assert r.samples > 0 and r.constant == 1 and r.ratio_lo == r.ratio_hi == 1


def test_region_trigonometric_factor_stays_in_one_to_three():
    h = ExpPoly([term(2, 3, 0, 0, 2, 0, 0)] + cos_pair(1, 3, F(1, 3), 0, 2, F(1, 5), 0))
    r = region_bound_check(h, F(1, 2), 10 ** 4)
    assert 1 <= r.ratio_lo and r.ratio_hi <= 3 and r.constant <= 3


def test_region_positivity_violation_has_witness():
    h = ExpPoly(cos_pair(2, 3, F(1, 3), 0, 2, 0, 0), 2)
    with pytest.raises(PositivityViolated) as err:
        region_bound_check(h, F(1, 4), 100)
    assert err.value.point[0] == 1 and err.value.enclosure[1] < 0


def test_region_points_respect_the_bounds():
    for n, m in region_points(F(1, 2), 500):
        assert math.log(n) ** 2 <= m + 1e-9 and m * m <= n


def test_torus_closure_examples():
    assert torus_closure([F(1, 3)]).order == 3
    assert torus_closure([F(1, 3)]).return_times(3) == [3, 6, 9]
    assert torus_closure([F(1, 2), F(1, 3)]).order == 6
    G = torus_closure([F(2, 5), F(1, 5)])
    assert G.order == 5 and len(set(G.elements())) == 5


def test_visit_bound_examples():
    assert visit_bound([F(1, 3)], [0]) == 2
    assert visit_bound([0], [0]) == 0
    assert visit_bound([F(1, 2), F(1, 3)], [0, 1]) == 4
    with pytest.raises(EmptyTarget):
        visit_bound([F(1, 3)], [])


def test_negative_value_search_examples():
    r = negative_value_search(cos_pair(2, 1, F(1, 3)))
    assert (r.m, r.value.exact) == (1, -1)
    r = negative_value_search([(1, 0, F(1, 2))])
    assert (r.m, r.value.exact) == (1, -1)
    with pytest.raises(ZeroAngleTerm):
        negative_value_search([(1, 0, 0)])


def test_cesaro_example():
    rep = cesaro_check(cos_pair(2, 1, F(1, 3)))
    assert rep.passed and rep.order == 3 and rep.period_sum == 0


def test_q_lower_bound_on_a_positive_sequence():
    h = ExpPoly([term(2, 3)] + cos_pair(1, 3, F(1, 3)))
    rep = q_lower_bound_check(h, D=4)
    assert rep.passed and rep.q_min == F(3, 2) and rep.q_max == 3


def test_declared_rate_diagnostic():
    h = ExpPoly([term(1, 3, 0, 0, 1, 0, 0), term(1, 2, 0, 0, 1, 0, 0)])
    assert declared_rate_diagnostic(h, 3, delta=F(1, 2), D_delta=4, n_max=20).consistent
    assert not declared_rate_diagnostic(h, 2).beta_matches
    assert not declared_rate_diagnostic(ExpPoly([term(1, 3, 0, 0, 2, 0, 0)]), 3).gamma_is_one
    with pytest.raises(ArityMismatch):
        declared_rate_diagnostic(ExpPoly([term(1, 3)]), 3)


# properties --------------------------------------------------------------------

turns = st.fractions(min_value=0, max_value=1, max_denominator=12).filter(lambda t: 0 < t < 1)
coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=4)
moduli = st.sampled_from([F(1, 2), F(1), F(2), F(3)])


@st.composite
def one_variable(draw):
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        terms += cos_pair(draw(coeffs), draw(moduli), draw(turns), draw(st.integers(0, 2)))
    terms += [term(draw(coeffs), draw(moduli), 0, draw(st.integers(0, 2)))]
    return ExpPoly(terms)


@st.composite
def sign_data(draw):
    out = []
    for t in draw(st.lists(turns, min_size=1, max_size=3, unique=True)):
        re, im = draw(coeffs), draw(coeffs)
        out += [(re, im, t), (re, -im, 1 - t)] if t != F(1, 2) else [(re, 0, t)]
    index = {}
    for re, im, t in out:
        index[t] = (index.get(t, (0, 0))[0] + re, index.get(t, (0, 0))[1] + im)
    return [(re, im, t) for t, (re, im) in index.items()]


@settings(max_examples=40, deadline=None)
@given(one_variable(), st.integers(0, 12))
def test_values_are_real(h, n):
    if not h.terms:
        return
    v = evaluate(h, n)
    assert v.imag_lo <= 0 <= v.imag_hi and v.lo <= v.hi


@settings(max_examples=40, deadline=None)
@given(st.lists(turns, min_size=1, max_size=4), st.integers(1, 4))
def test_torus_order_divides_return_times(ts, k):
    G = torus_closure(ts)
    assert G.order == math.lcm(*(t.denominator for t in ts))
    for r in G.return_times(k):
        assert r % G.order == 0 and all(x == 0 for x in G.theta(r))


@settings(max_examples=60, deadline=None)
@given(sign_data())
def test_negative_value_found_within_one_period(data):
    if all(re == 0 and im == 0 for re, im, _ in data):
        return
    try:
        r = negative_value_search(data)
    except Exception as e:  # only vanishing data may escape
        assert type(e).__name__ == "IdenticallyZero", e
        return
    assert r.value.sign() < 0 and r.m < r.order


@settings(max_examples=40, deadline=None)
@given(sign_data())
def test_cesaro_partial_sums_vanish_at_the_period(data):
    if all(re == 0 and im == 0 for re, im, _ in data):
        return
    assert cesaro_check(data).passed


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=2, max_size=3, unique=True), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_dominant_signature_agrees_with_growth_signature(entries, coords):
    """h(n) = Z . M^n v for diagonal M has the growth signature of v."""
    n = len(entries)
    v, Z = coords[:n], [1] * n
    if not any(v):
        return
    M = RationalMatrix.diag(entries)
    h = ExpPoly([term(c, a) for a, c in zip(entries, v) if c])
    sig = dominant_signature(h)
    gs = growth_signature(M, v, Z)
    assert (gs.beta, gs.a) == sig.as_tuple()
    assert gs.sign == (1 if sum(t.re for t in sig.plus_terms) > 0 else -1)
