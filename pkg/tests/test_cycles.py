from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conespec.cycles import (GeneratedCycle, R_closed, R_direct, StratifiedModel, atomic_decomposition,
                             calculus_check, cut_and_paste_check, disjoint_support_positivity,
                             intersection_number, pi_constructible, pi_recursive, psi_inverse, reconstruct,
                             support, two_lines, validate_model, vector_measure)
from conespec.errors import EmptySet, NotDual, NotPositive, SupportMeetsD
from conespec.harness.generate import InstanceSpec, generate

F = Fraction
TWO = two_lines()


def alpha12(model=TWO):
    return GeneratedCycle(model, {"eta1": [1], "eta2": [2]})


def test_two_lines_is_valid():
    assert validate_model(TWO).passed and validate_model(two_lines(embedded=True)).passed


def test_dim_equal_comparable_points_are_flagged():
    m = StratifiedModel([("a", 1), ("b", 1)], [("a", "b")], {"a": 1, "b": 1}, {("a", "b"): [[1]]})
    rep = validate_model(m)
    assert not rep.passed and "a < b" in rep.violations[0]


def test_non_composing_chain_is_named():
    m = StratifiedModel([("z", 0), ("y", 1), ("x", 2)], [("z", "y"), ("y", "x"), ("z", "x")],
                        {"z": 1, "y": 1, "x": 1},
                        {("z", "y"): [[1]], ("y", "x"): [[2]], ("z", "x"): [[3]]}, i=0)
    rep = validate_model(m)
    assert not rep.passed and any("z < y < x" in v for v in rep.violations)


def test_low_dimensional_space_must_vanish():
    m = StratifiedModel([("p", 0)], [], {"p": 1}, {}, i=1)
    assert not validate_model(m).passed


def test_restriction_of_the_two_lines():
    a = alpha12()
    # the colimit over L1 u L2 keeps the two line classes apart; the degree pairing gives 1 + 2
    assert R_closed(a, TWO.whole) == (1, 2)
    assert intersection_number(a, TWO.whole, (1, 1)) == 3
    emb = two_lines(embedded=True)
    assert R_closed(alpha12(emb), emb.whole)[-1] == 3
    assert R_closed(alpha12(emb), TWO.principal("eta1")) == (1,)
    zero = GeneratedCycle.zero(TWO)
    assert all(not any(R_closed(zero, V)) for V in TWO.closed_sets())
    with pytest.raises(EmptySet):
        R_closed(a, [])


def test_cut_and_paste_examples():
    a = alpha12()
    L1, L2 = TWO.principal("eta1"), TWO.principal("eta2")
    rep = cut_and_paste_check(a, L1, L2)
    assert rep.passed and rep.lhs == (1, 2)
    same = cut_and_paste_check(a, L1, L1)
    assert same.passed and same.lhs == (2,)
    m = StratifiedModel([("u", 1), ("v", 1)], [], {"u": 1, "v": 1}, {})
    b = GeneratedCycle(m, {"u": [1], "v": [5]})
    assert cut_and_paste_check(b, {"u"}, {"v"}).passed


def test_pi_examples():
    a = alpha12()
    assert pi_constructible(a, TWO.ids) == a
    off = pi_constructible(a, {"eta1"})
    assert off.atoms == {"p": (), "eta1": (1,), "eta2": (0,)}
    assert pi_recursive(a, {"eta1"}) == off
    assert pi_constructible(pi_constructible(a, {"eta1"}), {"eta2", "p"}).is_zero()


def test_support_examples():
    assert support(GeneratedCycle(TWO, {"eta1": [1]})) == {"eta1"}
    assert support(GeneratedCycle.zero(TWO)) == frozenset()
    emb = two_lines(embedded=True)
    full = GeneratedCycle(emb, {"eta1": [1], "eta2": [1], "xi": [1]})
    assert support(full) == {"eta1", "eta2", "xi"}  # p carries a zero space


def test_atomic_decomposition_examples():
    a = alpha12()
    assert atomic_decomposition(a) == [("eta1", (1,)), ("eta2", (2,))]
    assert reconstruct(TWO, atomic_decomposition(a)) == a
    assert atomic_decomposition(GeneratedCycle.zero(TWO)) == []
    with pytest.raises(NotPositive):
        atomic_decomposition(GeneratedCycle(TWO, {"eta1": [-1]}))


def test_intersection_number_degenerate_cases():
    assert intersection_number(GeneratedCycle.zero(TWO), TWO.whole, (1, 1)) == 0
    assert intersection_number(alpha12(), TWO.whole, (0, 0)) == 0


def test_vector_measure_examples():
    meas = vector_measure(alpha12(), (1, 1))
    assert meas.cells() == {"p": 0, "eta1": 1, "eta2": 2}
    assert meas.total() == 3 == meas({"eta1", "eta2"}) + meas({"p"})
    assert vector_measure(GeneratedCycle.zero(TWO), (1, 1)).total() == 0
    with pytest.raises(NotDual):
        vector_measure(alpha12(), (1, -1))


def test_disjoint_support_examples():
    rep = disjoint_support_positivity(GeneratedCycle(TWO, {"eta1": [1]}), "p")
    assert rep.passed and rep.value == 1
    assert disjoint_support_positivity(GeneratedCycle.zero(TWO), "p").value == 0
    emb = two_lines(embedded=True)
    from conespec.cycles import Divisor
    D = Divisor("L1", emb.principal("eta1"), (1, 1, 1))
    with pytest.raises(SupportMeetsD):
        disjoint_support_positivity(GeneratedCycle(emb, {"eta1": [1]}), D)


def test_calculus_check_on_the_two_lines():
    assert calculus_check(alpha12()).passed
    assert calculus_check(alpha12(two_lines(embedded=True))).passed


# properties --------------------------------------------------------------------

def stratified(seed, strata):
    inst = generate(InstanceSpec.make("random-stratified", seed, strata=strata))
    return inst.data["model"], inst.data["cycle"], inst.data["off_divisor_cycle"]


seeds = st.integers(0, 2 ** 32)
sizes = st.integers(1, 12)


@settings(max_examples=25, deadline=None)
@given(seeds, sizes)
def test_generated_models_are_valid(seed, k):
    model, _, _ = stratified(seed, k)
    assert validate_model(model).passed


@settings(max_examples=25, deadline=None)
@given(seeds, sizes)
def test_psi_round_trip(seed, k):
    model, alpha, _ = stratified(seed, k)
    assert psi_inverse(model, alpha.psi()) == alpha


@settings(max_examples=20, deadline=None)
@given(seeds, sizes, st.data())
def test_pi_is_local(seed, k, data):
    model, alpha, _ = stratified(seed, k)
    W = data.draw(st.sets(st.sampled_from(model.ids)))
    part = pi_constructible(alpha, W)
    assert part == pi_recursive(alpha, W)
    for x in model.ids:
        assert part.atoms[x] == (alpha.atoms[x] if x in W else tuple(F(0) for _ in alpha.atoms[x]))
    assert support(part) <= W


@settings(max_examples=20, deadline=None)
@given(seeds, sizes, st.data())
def test_cut_and_paste_on_random_pairs(seed, k, data):
    model, alpha, _ = stratified(seed, k)
    sets = model.closed_sets(limit=40)
    V1, V2 = data.draw(st.sampled_from(sets)), data.draw(st.sampled_from(sets))
    assert cut_and_paste_check(alpha, V1, V2).passed
    assert R_closed(alpha, V1) == R_direct(alpha, V1)


@settings(max_examples=20, deadline=None)
@given(seeds, sizes, st.data())
def test_measure_is_additive(seed, k, data):
    model, alpha, _ = stratified(seed, k)
    meas = vector_measure(alpha, model.divisors[0].pairing)
    W1 = data.draw(st.sets(st.sampled_from(model.ids)))
    W2 = data.draw(st.sets(st.sampled_from([x for x in model.ids if x not in W1]))) if len(W1) < len(model.ids) else set()
    assert meas(W1 | W2) == meas(W1) + meas(W2)
    assert all(v >= 0 for v in meas.cells().values())


@settings(max_examples=20, deadline=None)
@given(seeds, sizes)
def test_reconstruction_and_disjoint_support(seed, k):
    model, alpha, off = stratified(seed, k)
    assert reconstruct(model, atomic_decomposition(alpha)) == alpha
    assert disjoint_support_positivity(off, "D").passed
