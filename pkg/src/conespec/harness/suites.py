"""Verification suites over generated corpora.

Each suite draws ``count`` instance specs from a seeded stream, runs every
applicable check on each instance and assembles a VerificationReport in index
order.  Reports are byte-identical for identical (suite, count, seed) unless
timings are requested.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ..cones import cone_spectrum, iterate_spectrum_check, verify_spectrum_theorem
from ..cycles import (
    calculus_check,
    disjoint_support_positivity,
    support,
    validate_model,
    vector_measure,
)
from ..degrees import (
    ample_spectrum,
    big_spectrum,
    classify,
    contains_value,
    cross_check_big,
    dynamical_degrees,
)
from ..errors import PositivityViolated
from ..exppoly import cesaro_check, negative_value_search, region_bound_check
from ..kernel import RealAlgebraic, growth_rate
from .generate import InstanceSpec, generate

SCHEMA_VERSION = "conespec-report/1"
SUITES = ("cone-theorems", "degree-consistency", "exppoly", "cycles")
CERTIFIED_WIDTH = Fraction(1, 2 ** 64)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if timings and self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class InstanceResult:
    index: int
    spec: InstanceSpec
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass
class VerificationReport:
    suite: str
    count: int
    seed: int
    instances: list
    timings: bool = False
    schema: str = SCHEMA_VERSION

    @property
    def checks(self) -> list:
        return [c for inst in self.instances for c in inst.checks]

    @property
    def failures(self) -> list:
        return [(inst, c) for inst in self.instances for c in inst.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        by: dict = {}
        for c in self.checks:
            p, f = by.get(c.name, (0, 0))
            by[c.name] = (p + c.passed, f + (not c.passed))
        return by

    def to_text(self) -> str:
        lines = [f"schema: {self.schema}", f"suite: {self.suite}", f"count: {self.count}", f"seed: {self.seed}"]
        for inst in self.instances:
            lines.append(f"instance {inst.index}: {inst.spec.replay()}")
            for c in inst.checks:
                line = f"  check {c.name}: {'pass' if c.passed else 'FAIL'}"
                if self.timings and c.seconds is not None:
                    line += f" seconds={c.seconds:.6f}"
                if not c.passed:
                    line += f" detail={json.dumps(c.detail)} replay={inst.spec.replay()}"
                lines.append(line)
        for name, (p, f) in sorted(self.summary().items()):
            lines.append(f"total {name}: passed={p} failed={f}")
        n = len(self.checks)
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'} checks={n} failed={len(self.failures)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "schema": self.schema, "suite": self.suite, "count": self.count, "seed": self.seed,
            "passed": self.passed,
            "instances": [{"index": i.index, "spec": i.spec.to_json(),
                           "checks": [c.to_json(self.timings) for c in i.checks]} for i in self.instances],
            "failures": [{"index": i.index, "check": c.name, "detail": c.detail, "replay": i.spec.to_json()}
                         for i, c in self.failures],
        }


# instance streams -------------------------------------------------------------

def instance_specs(suite: str, count: int, seed: int, negative_control: bool = False) -> list[InstanceSpec]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    rng = random.Random(f"{suite}:{seed}")
    specs = []
    for k in range(count):
        s = rng.getrandbits(63)
        if suite == "cone-theorems":
            kind = "diagonal-cone" if k % 2 == 0 else "permutation-scale"
            specs.append(InstanceSpec.make(kind, s, d=rng.randint(1, 5)))
        elif suite == "degree-consistency":
            specs.append(InstanceSpec.make("monomial-product", s, k=rng.randint(1, 4)))
        elif suite == "exppoly":
            mode = "positive" if k % 2 == 0 else "sign-data"
            specs.append(InstanceSpec.make("exppoly-random", s, mode=mode))
        else:
            specs.append(InstanceSpec.make("random-stratified", s, strata=rng.randint(1, 20)))
    if negative_control:
        if suite != "exppoly":
            raise ValueError("the negative control is defined for the exppoly suite")
        specs.append(InstanceSpec.make("exppoly-random", seed, mode="sign-violating"))
    return specs


# checks ----------------------------------------------------------------------

def _distinct(values) -> tuple:
    out = []
    for v in sorted(RealAlgebraic.coerce(x) for x in values):
        if not out or out[-1] != v:
            out.append(v)
    return tuple(out)


def _cone_checks(inst) -> list:
    M, K = inst.data["matrix"], inst.data["cone"]
    checks = []
    if inst.spec.kind == "diagonal-cone":
        def diag():
            got = cone_spectrum(M, K).members
            want = _distinct(inst.data["entries"])
            return tuple(got) == want, f"spectrum {[str(v) for v in got]} vs entries {[str(v) for v in want]}"
        checks.append(("diagonal-spectrum-equals-entries", diag))

    def certs():
        res = cone_spectrum(M, K)
        bad = [r.describe() for r in res.results if not r.verify(M, K)]
        return not bad, "; ".join(bad)

    def theorem():
        rep = verify_spectrum_theorem(M, K)
        return rep.passed, "" if rep.passed else " | ".join(rep.lines())

    def iterate(n):
        def run():
            rep = iterate_spectrum_check(M, K, n)
            return rep.passed, (f"power {[str(v) for v in rep.power_members]} lifted "
                                f"{[str(v) for v in rep.lifted_members]}")
        return run

    checks += [("amplification-certificates", certs), ("spectrum-theorem-subsets", theorem),
               ("iterate-spectrum-n2", iterate(2)), ("iterate-spectrum-n3", iterate(3))]
    return checks


def _degree_checks(inst) -> list:
    sys, tree, ex = inst.data["system"], inst.data["tree"], inst.data["exponents"]
    want = _distinct(ex)

    def concave():
        prof = dynamical_degrees(sys)
        mus = [prof.mu(i) for i in range(1, sys.d + 1)]
        return all(a >= b for a, b in zip(mus, mus[1:])), f"mu {[str(v) for v in mus]}"

    def big():
        got = big_spectrum(sys)
        return tuple(got) == want, f"big {[str(v) for v in got]} vs exponents {ex}"

    def cross():
        rep = cross_check_big(sys, strict=False)
        return rep.passed, f"cone {[str(v) for v in rep.cone_members]} mu {[str(v) for v in rep.mu_values]}"

    def ample():
        got = ample_spectrum(tree).values
        return tuple(got) == want, f"ample {[str(v) for v in got]} vs exponents {ex}"

    def hyperbolic():
        prof = dynamical_degrees(sys)
        mus = [prof.mu(i) for i in range(1, sys.d + 1)]
        c = classify(sys, tree)
        return c.quasi_amplified == (not contains_value(mus, 1)), json.dumps(c.to_json(), sort_keys=True)

    def growth():
        values = ample_spectrum(tree).values
        MT = sys.pullbacks[1].T
        bad = []
        for r in sys.big_model.dual().rays:
            g = growth_rate(MT, r)
            if not contains_value(values, g):
                bad.append(f"ray {[str(a) for a in r]} grows at {g}")
        return not bad, "; ".join(bad)

    return [("log-concavity", concave), ("big-spectrum-equals-exponents", big),
            ("big-cone-spectrum-matches-mu", cross), ("ample-aggregation", ample),
            ("quasi-amplified-iff-hyperbolic", hyperbolic), ("growth-rate-in-lyapunov-set", growth)]


def _exppoly_checks(inst) -> list:
    mode = inst.spec.p.get("mode", "positive")
    if mode == "sign-data":
        data = inst.data["sign_data"]

        def sign():
            nv = negative_value_search(data)
            return nv.value.hi < 0 and 0 <= nv.m < nv.order, f"m={nv.m} order={nv.order} value<={nv.value.hi}"

        def cesaro():
            rep = cesaro_check(data)
            return rep.passed, f"period sum {rep.period_sum}"

        return [("sign-lemma-negative-value", sign), ("cesaro-mean-zero", cesaro)]
    h = inst.data["exppoly"]

    def bracket(eps0, n_max):
        def run():
            try:
                rep = region_bound_check(h, eps0=eps0, n_max=n_max)
            except PositivityViolated as e:
                return False, f"witness point {e.point}: value in {e.enclosure}"
            ok = rep.bracket_finite and rep.envelope_decreasing and rep.max_width <= CERTIFIED_WIDTH
            return ok, f"C={rep.constant} samples={rep.samples} envelope_decreasing={rep.envelope_decreasing}"
        return run

    if mode == "sign-violating":
        return [("exppoly-positivity", bracket(Fraction(1, 4), 10 ** 4))]
    return [("dominance-bracket-eps-1/4", bracket(Fraction(1, 4), 10 ** 4)),
            ("dominance-bracket-eps-1/2", bracket(Fraction(1, 2), 10 ** 4))]


def _cycle_checks(inst) -> list:
    model, alpha, off = inst.data["model"], inst.data["cycle"], inst.data["off_divisor_cycle"]
    D = model.divisor("D")

    def valid():
        rep = validate_model(model)
        return rep.passed, "; ".join(rep.violations)

    def calculus():
        rep = calculus_check(alpha, seed=inst.spec.seed % 1000)
        return rep.passed, f"sets={rep.closed_sets} pairs={rep.pairs_checked} failures={rep.failures[:3]}"

    def measure():
        meas = vector_measure(alpha, D.pairing)
        cells = meas.cells()
        return sum(cells.values()) == meas.total() and all(v >= 0 for v in cells.values()), \
            f"total {meas.total()}"

    def disjoint():
        rep = disjoint_support_positivity(off, D)
        return rep.passed and not (support(off) & D.support), f"value {rep.value}"

    return [("model-valid", valid), ("cycle-calculus", calculus), ("measure-additivity", measure),
            ("disjoint-support-positivity", disjoint)]


_CHECKS = {"cone-theorems": _cone_checks, "degree-consistency": _degree_checks,
           "exppoly": _exppoly_checks, "cycles": _cycle_checks}


def run_instance(suite: str, index: int, spec_json: dict) -> InstanceResult:
    spec = InstanceSpec.from_json(spec_json)
    result = InstanceResult(index, spec)
    try:
        inst = generate(spec)
        checks = _CHECKS[suite](inst)
    except Exception as e:  # generation failures are data
        result.checks.append(CheckResult("generate", False, f"{type(e).__name__}: {e}"))
        return result
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as e:
            ok, detail = False, f"{type(e).__name__}: {e}"
        result.checks.append(CheckResult(name, bool(ok), "" if ok else detail, time.perf_counter() - t0))
    return result


def run_suite(name: str, count: int, seed: int, workers: int = 1, negative_control: bool = False,
              timings: bool = False) -> VerificationReport:
    specs = instance_specs(name, count, seed, negative_control)
    args = [(name, k, s.to_json()) for k, s in enumerate(specs)]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_instance, *zip(*args)))
    else:
        results = [run_instance(*a) for a in args]
    results.sort(key=lambda r: r.index)
    return VerificationReport(name, count, seed, results, timings)
