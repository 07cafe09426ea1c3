"""Acceptance criteria 1-11.  Each test prints one pass/fail line naming the criterion."""

import random
import time
from fractions import Fraction

import pytest

from conespec.cones import (PolyhedralCone, cone_spectrum, iterate_spectrum_check, iterate_witness_check,
                            verify_spectrum_theorem)
from conespec.cycles import GeneratedCycle, calculus_check, two_lines
from conespec.degrees import (ample_spectrum, big_spectrum, classify, contains_value, cross_check_big,
                              dynamical_degrees)
from conespec.exppoly import negative_value_search, region_bound_check
from conespec.gallery import gallery, monomial_system, monomial_tree
from conespec.harness.generate import InstanceSpec, generate
from conespec.kernel import RationalMatrix, RealAlgebraic, certified_spectrum, growth_rate

F = Fraction
WIDTH = F(1, 2 ** 64)


@pytest.fixture
def announce(capsys):
    def say(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number}] {title}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        assert ok, detail
    return say


def stream(name, count, make):
    rng = random.Random(f"acceptance:{name}")
    return [generate(make(rng, k)) for k in range(count)]


def distinct(values):
    return tuple(sorted({RealAlgebraic.coerce(v) for v in values}))


def cone_instances(name, count, max_d):
    def make(rng, k):
        kind = "diagonal-cone" if k % 2 == 0 else "permutation-scale"
        return InstanceSpec.make(kind, rng.getrandbits(63), d=rng.randint(1, max_d))
    return stream(name, count, make)


def test_diagonal_spectrum_equals_entries(announce):
    insts = stream("diagonal", 50, lambda rng, k: InstanceSpec.make("diagonal-cone", rng.getrandbits(63),
                                                                    d=rng.randint(1, 6)))
    bad, slowest = [], 0.0
    for inst in insts:
        t = time.perf_counter()
        got = cone_spectrum(inst.data["matrix"], inst.data["cone"]).members
        slowest = max(slowest, time.perf_counter() - t)
        if tuple(got) != distinct(inst.data["entries"]):
            bad.append(inst.spec.replay())
    announce(1, "diagonal systems have the entry set as cone spectrum", not bad and slowest < 1,
             f"50 instances, slowest {slowest:.3f}s, mismatches {bad[:2]}")


def test_interior_meet_iff_spectrum_containment(announce):
    t = time.perf_counter()
    bad, subsets = [], 0
    for inst in cone_instances("theorem", 200, 5):
        M, K = inst.data["matrix"], inst.data["cone"]
        rep = verify_spectrum_theorem(M, K)
        subsets += len(rep.rows)
        if not rep.passed or len(rep.rows) != 2 ** len(certified_spectrum(M).units()):
            bad.append(inst.spec.replay())
    elapsed = time.perf_counter() - t
    announce(2, "E_S meets the cone interior exactly when S contains the cone spectrum",
             not bad and elapsed < 300, f"200 instances, {subsets} subsets, {elapsed:.1f}s, failures {bad[:2]}")


def test_iterate_spectrum_is_the_power_set(announce):
    swap = RationalMatrix(((F(0), F(2)), (F(3), F(0))))
    Q2 = PolyhedralCone.orthant(2)
    sqrt6 = RealAlgebraic.coerce(6).nth_root(2)
    ok_swap = (cone_spectrum(swap, Q2).members == (sqrt6,)
               and cone_spectrum(swap ** 2, Q2).members == (6,)
               and iterate_spectrum_check(swap, Q2, 2).sets_equal)
    bad = []
    for inst in cone_instances("iterate", 100, 5):
        for n in (2, 3):
            if not iterate_spectrum_check(inst.data["matrix"], inst.data["cone"], n).sets_equal:
                bad.append((n, inst.spec.replay()))
    announce(3, "the cone spectrum of M^n is the n-th powers of the cone spectrum of M",
             ok_swap and not bad, f"100 instances, n in {{2, 3}}, swap case ok={ok_swap}, failures {bad[:2]}")


def test_iterate_witness_formulas(announce):
    """Eigenvalue alphas exercise the backward construction; random rational alphas,
    where g is amplified, exercise the forward one."""
    rng = random.Random("acceptance:witness-alphas")
    bad, forward, backward = [], 0, 0
    for inst in cone_instances("witness", 100, 5):
        M, K = inst.data["matrix"], inst.data["cone"]
        alphas = [F(rng.randint(1, 40), rng.randint(1, 6)) for _ in range(2)]
        for n in (2, 3):
            for rep in (iterate_spectrum_check(M, K, n), iterate_witness_check(M, K, n, alphas)):
                forward += len(rep.forward_checks)
                backward += sum(1 for c in rep.backward_checks if c[2])
                if not (all(ok for _, ok in rep.forward_checks)
                        and all(c and w for _, _, c, w in rep.backward_checks)):
                    bad.append((n, inst.spec.replay()))
    announce(4, "forward sum and backward weighted sum witnesses land strictly inside the cone",
             not bad and forward > 0 and backward > 0,
             f"100 instances, {forward} forward and {backward} backward witnesses, failures {bad[:2]}")


def test_big_cone_spectrum_is_the_mu_set(announce):
    t = time.perf_counter()
    bad = []
    insts = stream("big", 100, lambda rng, k: InstanceSpec.make("monomial-product", rng.getrandbits(63),
                                                                k=rng.randint(1, 4)))
    for inst in insts:
        sys = inst.data["system"]
        prof = dynamical_degrees(sys)
        mus = distinct(prof.mu(i) for i in range(1, sys.d + 1))
        got = cone_spectrum(sys.pullbacks[1], sys.big_model).members
        if tuple(got) != mus or big_spectrum(sys) != mus:
            bad.append(inst.spec.replay())
    elapsed = time.perf_counter() - t
    announce(5, "the cone spectrum on the big-cone model equals the mu values of the degree profile",
             not bad and elapsed < 120, f"100 split monomial systems, {elapsed:.1f}s, failures {bad[:2]}")


def test_ample_spectrum_aggregates_the_tree(announce):
    ok_x2y3 = ample_spectrum(monomial_tree([2, 3])).values == (2, 3)
    bad = []
    insts = stream("ample", 20, lambda rng, k: InstanceSpec.make("monomial-product", rng.getrandbits(63),
                                                                 k=rng.randint(1, 4)))
    for inst in insts:
        if ample_spectrum(inst.data["tree"]).values != distinct(inst.data["exponents"]):
            bad.append(inst.spec.replay())
    announce(6, "the ample spectrum of a monomial tree is its exponent set",
             ok_x2y3 and not bad, f"x2y3 ok={ok_x2y3}, 20 generated trees, failures {bad[:2]}")


def test_quasi_amplified_iff_hyperbolic(announce):
    bad, negative = [], None
    for name, (sys, tree) in gallery().items():
        prof = dynamical_degrees(sys)
        mus = [prof.mu(i) for i in range(1, sys.d + 1)]
        c = classify(sys, tree)
        if c.quasi_amplified != (not contains_value(mus, 1)) or c.hyperbolic != c.quasi_amplified:
            bad.append(name)
        if name == "xy2":
            negative = (not c.quasi_amplified) and mus[1] == 1
    announce(7, "quasi-amplified agrees with 1 not being a mu value on the gallery",
             not bad and negative, f"{len(gallery())} systems, xy2 negative case ok={negative}, failures {bad}")


def test_dominance_bracket_on_positive_exppolys(announce):
    bad, samples = [], 0
    insts = stream("bracket", 50, lambda rng, k: InstanceSpec.make("exppoly-random", rng.getrandbits(63),
                                                                   mode="positive"))
    for inst in insts:
        rep = region_bound_check(inst.data["exppoly"], eps0=F(1, 4), n_max=10 ** 4)
        samples += rep.samples
        if not (rep.bracket_finite and rep.envelope_decreasing and rep.max_width <= WIDTH):
            bad.append(inst.spec.replay())
    announce(8, "positive exponential polynomials stay in a finite dominance bracket",
             not bad, f"50 sequences, eps0=1/4, n<=10^4, {samples} region samples, failures {bad[:2]}")


def test_sign_search_finds_a_negative_value(announce):
    bad = []
    insts = stream("sign", 200, lambda rng, k: InstanceSpec.make("exppoly-random", rng.getrandbits(63),
                                                                 mode="sign-data"))
    for inst in insts:
        try:
            nv = negative_value_search(inst.data["sign_data"])
            if not (nv.value.hi < 0 and nv.m < nv.order):
                bad.append(inst.spec.replay())
        except Exception as e:  # any failure here is a defect
            bad.append(f"{inst.spec.replay()}: {e}")
    announce(9, "the sign search finds a negative value within one period",
             not bad, f"200 inputs, failures {bad[:2]}")


def test_generated_cycles_calculus(announce):
    t = time.perf_counter()
    bad = []
    insts = stream("cycles", 50, lambda rng, k: InstanceSpec.make("random-stratified", rng.getrandbits(63),
                                                                  strata=rng.randint(1, 20)))
    for inst in insts:
        if not calculus_check(inst.data["cycle"]).passed:
            bad.append(inst.spec.replay())
    for model in (two_lines(), two_lines(embedded=True)):
        if not calculus_check(GeneratedCycle(model, {"eta1": [1], "eta2": [2]})).passed:
            bad.append(model.label)
    elapsed = time.perf_counter() - t
    announce(10, "cut-and-paste, pi additivity, Psi round trip and atomic reconstruction hold",
             not bad and elapsed < 60, f"50 models plus two-lines, {elapsed:.1f}s, failures {bad[:2]}")


def test_growth_rates_lie_in_the_lyapunov_set(announce):
    bad, rays = [], 0
    insts = stream("growth", 50, lambda rng, k: InstanceSpec.make("monomial-product", rng.getrandbits(63),
                                                                  k=rng.randint(1, 4)))
    for inst in insts:
        sys = inst.data["system"]
        values = ample_spectrum(inst.data["tree"]).values
        MT = sys.pullbacks[1].T
        for r in sys.big_model.dual().rays:
            rays += 1
            if not contains_value(values, growth_rate(MT, r)):
                bad.append(inst.spec.replay())
    announce(11, "growth rates of the dual cone rays lie in the aggregated Lyapunov set",
             not bad, f"50 systems, {rays} rays, failures {bad[:2]}")
