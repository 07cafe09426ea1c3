"""Command line interface: ``conespec <command> [flags]``.

Exit codes: 0 when everything passes, 1 on a check failure, 2 on an input error.
JSON output of every command that reads a file carries the canonical form of
the parsed input under "input", so parse -> serialize -> parse round-trips.
"""

from __future__ import annotations

import argparse
import json
import sys

from .. import __version__
from ..cones import cone_spectrum, is_alpha_amplified, verify_spectrum_theorem
from ..cycles import (
    R_closed,
    atomic_decomposition,
    calculus_check,
    support,
    validate_model,
    vector_measure,
)
from ..degrees import (
    ample_spectrum,
    big_spectrum,
    classify,
    cross_check_big,
    dynamical_degrees,
)
from ..errors import CheckFailure, ConespecError, InputError
from ..exppoly import (
    cesaro_check,
    dominant_signature,
    evaluate,
    negative_value_search,
    region_bound_check,
    torus_closure,
)
from ..kernel import RealAlgebraic, certified_spectrum
from . import io
from .generate import KINDS, InstanceSpec, generate, write_instance
from .suites import SUITES, run_suite

FAIL = 1
INPUT = 2


def _values(vs) -> list:
    return [io.value_json(v) for v in vs]


def _strs(vs) -> list:
    return [str(v) for v in vs]


# commands --------------------------------------------------------------------

def cmd_spectrum(a):
    raw = io.load(a.matrix)
    M = io.parse_matrix(raw)
    out = {"input": {"matrix": io.matrix_json(M)}, "spectrum": certified_spectrum(M).to_json()}
    text = [f"char poly coefficients: {' '.join(out['spectrum']['char_poly'])}"]
    text += [f"eigenvalue {e['approx']} ({e['kind']}, multiplicity {e['multiplicity']})"
             for e in out["spectrum"]["eigenvalues"]]
    ok = True
    if a.cone:
        K = io.parse_cone(io.load(a.cone), M.n)
        res = cone_spectrum(M, K, allow_forward_only=a.forward_only)
        out["input"]["cone"] = io.cone_json(K)
        out["cone_spectrum"] = _values(res.members)
        out["certificates"] = [{"alpha": io.value_json(r.alpha), "amplified": r.amplified,
                                "describe": r.describe(), "verified": r.verify(M, K)} for r in res.results]
        ok = all(c["verified"] for c in out["certificates"])
        text.append(f"cone spectrum: {{{', '.join(_strs(res.members))}}}")
        text += [f"  {c['describe']} [{'verified' if c['verified'] else 'NOT VERIFIED'}]" for c in out["certificates"]]
        if a.forward_only:
            out["experimental"] = "forward-only invariance: outside the equality hypothesis"
            text.append("note: forward-only mode, result is experimental")
        if a.alpha:
            r = is_alpha_amplified(M, K, _parse_alpha(a.alpha), allow_forward_only=a.forward_only)
            out["alpha_result"] = {"alpha": io.value_json(r.alpha), "amplified": r.amplified,
                                   "describe": r.describe(), "verified": r.verify(M, K)}
            ok = ok and out["alpha_result"]["verified"]
            text.append(r.describe())
        if a.check_theorem:
            rep = verify_spectrum_theorem(M, K)
            out["spectrum_theorem"] = {"passed": rep.passed, "lines": rep.lines()}
            ok = ok and rep.passed
            text += rep.lines()
    return out, text, ok


def _parse_alpha(s: str) -> RealAlgebraic:
    s = s.strip()
    if s.startswith("sqrt(") and s.endswith(")"):
        return RealAlgebraic.coerce(io.rat(s[5:-1])).nth_root(2)
    return RealAlgebraic.coerce(io.rat(s))


def cmd_amplified(a):
    M = io.parse_matrix(io.load(a.matrix))
    K = io.parse_cone(io.load(a.cone), M.n)
    alpha = _parse_alpha(a.alpha)
    r = is_alpha_amplified(M, K, alpha, allow_forward_only=a.forward_only)
    ok = r.verify(M, K)
    out = {"input": {"matrix": io.matrix_json(M), "cone": io.cone_json(K)}, "alpha": io.value_json(alpha),
           "amplified": r.amplified, "verified": ok, "describe": r.describe()}
    return out, [r.describe(), f"certificate {'verified' if ok else 'NOT VERIFIED'}"], ok


def cmd_degrees(a):
    s = io.parse_system(io.load(a.system))
    prof = dynamical_degrees(s)
    mus = [prof.mu(i) for i in range(1, s.d + 1)]
    out = {"input": io.system_json(s), "lambdas": _values(prof.lambdas), "mus": _values(mus)}
    return out, [f"lambda: {', '.join(_strs(prof.lambdas))}", f"mu: {', '.join(_strs(mus))}"], True


def cmd_big_spectrum(a):
    s = io.parse_system(io.load(a.system))
    vals = big_spectrum(s)
    out = {"input": io.system_json(s), "big_spectrum": _values(vals)}
    text = [f"big spectrum: {{{', '.join(_strs(vals))}}}"]
    ok = True
    if a.cross_check:
        rep = cross_check_big(s, strict=False)
        out["cross_check"] = {"passed": rep.passed, "cone_members": _values(rep.cone_members)}
        ok = rep.passed
        text.append(f"cone spectrum on the big model: {{{', '.join(_strs(rep.cone_members))}}} "
                    f"[{'agrees' if ok else 'MISMATCH'}]")
    return out, text, ok


def cmd_ample_spectrum(a):
    t = io.parse_tree(io.load(a.tree))
    res = ample_spectrum(t)
    out = {"input": io.tree_json(t), "ample_spectrum": _values(res.values),
           "contributions": [{"name": n, "period": p, "values": _values(v)} for n, p, v in res.contributions],
           "notes": list(res.notes), "period_conflicts": list(res.period_conflicts)}
    text = [f"ample spectrum: {{{', '.join(_strs(res.values))}}}"]
    text += [f"  {n} (period {p}): {', '.join(_strs(v))}" for n, p, v in res.contributions]
    text += [f"note: {n}" for n in res.notes]
    return out, text, not res.period_conflicts


def cmd_classify(a):
    if not a.system and not a.tree:
        raise InputError("classify needs --system or --tree")
    tree = io.parse_tree(io.load(a.tree)) if a.tree else None
    s = io.parse_system(io.load(a.system)) if a.system else tree.system
    c = classify(s, tree)
    out = {"input": {"system": io.system_json(s)}, "classification": c.to_json()}
    if tree is not None:
        out["input"]["tree"] = io.tree_json(tree)
    text = [f"{k}: {v}" for k, v in sorted(c.to_json().items())]
    return out, text, True


def cmd_exppoly(a):
    raw = io.load(a.input)
    bits = a.precision_bits
    if a.action == "sign":
        if isinstance(raw, list):
            data = [tuple(io.rat(x) for x in e) for e in raw]
            canon = [[str(x) for x in e] for e in data]
        else:
            data = io.parse_exppoly(raw)
            canon = io.exppoly_json(data)
        nv = negative_value_search(data)
        ces = cesaro_check(data)
        out = {"input": canon, "negative_value": nv.to_json(), "cesaro": {"passed": ces.passed}}
        return out, [f"C({nv.m}) < 0, enclosure [{nv.value.lo}, {nv.value.hi}] (period {nv.order})",
                     f"cesaro mean zero: {ces.passed}"], ces.passed
    h = io.parse_exppoly(raw)
    canon = io.exppoly_json(h)
    if a.action == "eval":
        if a.n is None:
            raise InputError("eval needs --n")
        v = evaluate(h, a.n, a.m, bits=bits)
        out = {"input": canon, "value": v.to_json()}
        return out, [f"h({a.n}{'' if a.m is None else ', ' + str(a.m)}) in [{v.lo}, {v.hi}]"], True
    if a.action == "torus":
        sig = dominant_signature(h)
        G = torus_closure([t.u_turn for t in sig.plus_terms])
        out = {"input": canon, "closure": G.to_json()}
        if h.arity == 2:
            out["closure_m"] = torus_closure([t.v_turn for t in sig.plus_terms]).to_json()
        return out, [f"closure order {G.order}, return times {G.return_times(3)}"], True
    sig = dominant_signature(h)
    out = {"input": canon, "signature": sig.to_json()}
    text = [f"dominant: beta={sig.beta} a={sig.a}" + ("" if h.arity == 1 else f" gamma={sig.gamma} b={sig.b}")]
    if h.arity == 2:
        rep = region_bound_check(h, eps0=io.rat(a.eps0), n_max=a.n_max, bits=bits)
        out["region"] = rep.to_json()
        text.append(f"region eps0={a.eps0} n<={a.n_max}: samples={rep.samples} C={rep.constant} "
                    f"envelope decreasing={rep.envelope_decreasing}")
        return out, text, rep.bracket_finite and rep.envelope_decreasing
    return out, text, True


def _set(model, s: str | None):
    if not s:
        return model.whole
    return model.as_closed(p.strip() for p in s.split(","))


def cmd_cycles(a):
    model = io.parse_model(io.load(a.model))
    out = {"input": {"model": io.model_json(model)}}
    if a.action == "validate":
        rep = validate_model(model)
        out["validation"] = rep.to_json()
        return out, ["valid" if rep.passed else "invalid"] + rep.violations, rep.passed
    if not a.cycle:
        raise InputError(f"cycles {a.action} needs --cycle")
    alpha = io.parse_cycle(model, io.load(a.cycle))
    out["input"]["cycle"] = io.cycle_json(alpha)
    if a.action == "psi":
        comps = {x: _strs(v) for x, v in alpha.psi().items()}
        out["psi"] = comps
        return out, [f"Psi_{x} = ({', '.join(v)})" for x, v in comps.items()], True
    if a.action == "restrict":
        V = _set(model, a.set)
        r = R_closed(alpha, V)
        sp = model.colimit(V)
        out["restriction"] = {"set": sorted(V), "vector": _strs(r), "rank": sp.rank}
        return out, [f"R_{{{','.join(sorted(V))}}} = ({', '.join(_strs(r))}) in a space of rank {sp.rank}"], True
    if a.action == "decompose":
        atoms = atomic_decomposition(alpha)
        out["atoms"] = [{"point": x, "class": _strs(v)} for x, v in atoms]
        out["support"] = sorted(support(alpha))
        return out, [f"{x}: ({', '.join(_strs(v))})" for x, v in atoms], True
    if a.action == "measure":
        if not a.divisor:
            raise InputError("cycles measure needs --divisor")
        meas = vector_measure(alpha, model.divisor(a.divisor).pairing)
        cells = meas.cells()
        out["measure"] = {"cells": {x: str(v) for x, v in cells.items()}, "total": str(meas.total())}
        return out, [f"{x}: {v}" for x, v in cells.items()] + [f"total: {meas.total()}"], True
    rep = calculus_check(alpha, seed=a.seed)
    out["calculus"] = {"passed": rep.passed, "closed_sets": rep.closed_sets, "pairs": rep.pairs_checked,
                       "failures": [list(map(str, f)) for f in rep.failures]}
    return out, [f"calculus check: {'pass' if rep.passed else 'FAIL'} ({rep.closed_sets} sets, "
                 f"{rep.pairs_checked} pairs)"] + [str(f) for f in rep.failures], rep.passed


def _param(s: str):
    if "=" not in s:
        raise InputError(f"--param expects key=value, got {s!r}")
    k, v = s.split("=", 1)
    try:
        return k, json.loads(v)
    except json.JSONDecodeError:
        return k, v


def cmd_generate(a):
    params = dict(_param(p) for p in a.param or [])
    spec = InstanceSpec.make(a.kind, a.seed, **params)
    inst = generate(spec)
    paths = write_instance(inst, a.out) if a.out else []
    out = {"spec": spec.to_json(), "files": inst.files if not a.out else [str(p) for p in paths]}
    return out, [f"{spec.replay()}"] + [f"wrote {p}" for p in paths], True


def cmd_verify(a):
    rep = run_suite(a.suite, a.count, a.seed, workers=a.workers, negative_control=a.negative_control,
                    timings=a.timings)
    if a.report:
        with open(a.report, "w") as fh:
            fh.write(rep.to_text() if a.format == "text" else json.dumps(rep.to_json(), indent=2, sort_keys=True) + "\n")
    return rep.to_json(), rep.to_text().rstrip("\n").split("\n"), rep.passed


COMMANDS = {
    "spectrum": cmd_spectrum, "amplified": cmd_amplified, "degrees": cmd_degrees,
    "big-spectrum": cmd_big_spectrum, "ample-spectrum": cmd_ample_spectrum, "classify": cmd_classify,
    "exppoly": cmd_exppoly, "cycles": cmd_cycles, "generate": cmd_generate, "verify": cmd_verify,
}


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(0), help="random seed")
    p.add_argument("--count", type=int, default=d(100), help="number of instances")
    p.add_argument("--precision-bits", type=int, default=d(128), help="working precision of interval enclosures")
    p.add_argument("--format", choices=("json", "text"), default=d("text"), help="output format")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conespec", description="Exact cone spectra and related verifications.")
    p.add_argument("--version", action="version", version=f"conespec {__version__}")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help):
        sp = sub.add_parser(name, help=help)
        _global_flags(sp, suppress=True)
        return sp

    s = cmd("spectrum", "certified spectrum of a matrix, and its cone spectrum with --cone")
    s.add_argument("--matrix", required=True)
    s.add_argument("--cone")
    s.add_argument("--alpha", help="also decide amplification at this value (p/q or sqrt(p/q))")
    s.add_argument("--allow-forward-only", "--forward-only", dest="forward_only", action="store_true",
                   help="accept cones with g(C) inside C only (experimental, outside the theorem's scope)")
    s.add_argument("--check-theorem", action="store_true", help="also run the subset-equivalence check")
    s = cmd("amplified", "decide alpha-amplification with a certificate")
    s.add_argument("--matrix", required=True)
    s.add_argument("--cone", required=True)
    s.add_argument("--alpha", required=True, help="rational p/q or sqrt(p/q)")
    s.add_argument("--allow-forward-only", "--forward-only", dest="forward_only", action="store_true")
    s = cmd("degrees", "dynamical degrees and Lyapunov exponents of a graded system")
    s.add_argument("--system", required=True)
    s = cmd("big-spectrum", "values mu_1..mu_d of a graded system")
    s.add_argument("--system", required=True)
    s.add_argument("--cross-check", action="store_true", help="compare with the cone spectrum on the big model")
    s = cmd("ample-spectrum", "aggregate the mu values over a periodic subsystem tree")
    s.add_argument("--tree", required=True)
    s = cmd("classify", "hyperbolic, quasi-amplified, amplified and int-amplified verdicts")
    s.add_argument("--system")
    s.add_argument("--tree")
    s = cmd("exppoly", "exponential-polynomial tools")
    s.add_argument("action", choices=("analyze", "eval", "sign", "torus"))
    s.add_argument("--input", required=True)
    s.add_argument("--eps0", default="1/4")
    s.add_argument("--n-max", "--nmax", dest="n_max", type=int, default=10 ** 4)
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s = cmd("cycles", "generated cycles on a stratified model")
    s.add_argument("action", choices=("validate", "psi", "restrict", "decompose", "measure", "check"))
    s.add_argument("--model", required=True)
    s.add_argument("--cycle")
    s.add_argument("--set", help="comma separated points; the closure is taken")
    s.add_argument("--divisor")
    s = cmd("generate", "write a random instance")
    s.add_argument("--kind", required=True, choices=KINDS)
    s.add_argument("--param", action="append", help="key=value, value parsed as JSON when possible")
    s.add_argument("--out", help="output directory; without it the files are printed")
    s = cmd("verify", "run a verification suite")
    s.add_argument("--suite", required=True, choices=SUITES)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--negative-control", action="store_true")
    s.add_argument("--timings", action="store_true", help="include wall-clock seconds per check")
    s.add_argument("--report", help="also write the report to this path")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        out, text, ok = COMMANDS[a.command](a)
    except CheckFailure as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}) if a.format == "json"
              else f"check failed: {type(e).__name__}: {e}", file=sys.stdout)
        return FAIL
    except (InputError, ConespecError, OSError) as e:
        print(f"input error: {type(e).__name__}: {e}", file=sys.stderr)
        return INPUT
    if a.format == "json":
        out = dict(out, passed=ok)
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print("\n".join(text))
    return 0 if ok else FAIL


if __name__ == "__main__":
    sys.exit(main())
