"""JSON file formats: matrices, cones, pullback systems, subsystem trees,
exponential polynomials and stratified models.  Rationals are "p/q" strings;
integers are accepted wherever a rational is expected."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from ..cones import PolyhedralCone
from ..cycles import Divisor, GeneratedCycle, StratifiedModel
from ..degrees import GradedPullbackSystem, SubsystemNode
from ..errors import InputError
from ..exppoly import ExpPoly
from ..kernel.linalg import RationalMatrix


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"not a rational: {x!r}") from e
    if isinstance(x, float):
        raise InputError(f"floats are not accepted, write {x!r} as a fraction string")
    raise InputError(f"not a rational: {x!r}")


def rat_str(x) -> str:
    return str(Fraction(x))


def load(path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as e:
        raise InputError(f"no such file: {path}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e})") from e


def dump(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


# matrices ---------------------------------------------------------------------

def parse_matrix(data) -> RationalMatrix:
    if isinstance(data, dict):
        if "matrix" not in data:
            raise InputError("matrix object needs a 'matrix' field")
        data = data["matrix"]
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InputError("a matrix is a nonempty list of rows")
    n = len(data)
    if any(len(r) != n for r in data):
        raise InputError("matrix must be square")
    return RationalMatrix(tuple(tuple(rat(a) for a in r) for r in data))


def matrix_json(M: RationalMatrix) -> list:
    return [[rat_str(a) for a in r] for r in M.rows]


# cones ------------------------------------------------------------------------

def parse_cone(data, n: int | None = None) -> PolyhedralCone:
    if not isinstance(data, dict):
        raise InputError("a cone is an object with 'rays' and/or 'facets'")
    if data.get("orthant"):
        return PolyhedralCone.orthant(int(data.get("dim", n)))
    rays = [[rat(a) for a in r] for r in data.get("rays", [])] if "rays" in data else None
    facets = [[rat(a) for a in f] for f in data.get("facets", [])] if "facets" in data else None
    dim = data.get("dim", n)
    if rays is None and facets is None:
        raise InputError("a cone needs rays or facets")
    if rays is not None and facets is not None:
        return PolyhedralCone.from_both(rays, facets, dim)
    if rays is not None:
        return PolyhedralCone.from_rays(rays, dim)
    return PolyhedralCone.from_facets(facets, dim)


def cone_json(K: PolyhedralCone) -> dict:
    return {"dim": K.ambient_dim, "rays": [[rat_str(a) for a in r] for r in K.rays],
            "facets": [[rat_str(a) for a in f] for f in K.facets]}


# systems and trees ------------------------------------------------------------

def parse_system(data, label: str = "") -> GradedPullbackSystem:
    if not isinstance(data, dict) or "d" not in data or "pullbacks" not in data:
        raise InputError("a system needs 'd' and 'pullbacks'")
    pbs = []
    for m in data["pullbacks"]:
        if not isinstance(m, list) or not m:
            raise InputError("each pullback is a nonempty matrix")
        pbs.append(RationalMatrix(tuple(tuple(rat(a) for a in r) for r in m)))
    n1 = pbs[1].n if len(pbs) > 1 else None
    amp = parse_cone(data["ample_model"], n1) if data.get("ample_model") else None
    big = parse_cone(data["big_model"], n1) if data.get("big_model") else None
    return GradedPullbackSystem(int(data["d"]), tuple(pbs), amp, big, data.get("label", label))


def system_json(s: GradedPullbackSystem) -> dict:
    out = {"d": s.d, "pullbacks": [matrix_json(m) for m in s.pullbacks]}
    if s.ample_model is not None:
        out["ample_model"] = cone_json(s.ample_model)
    if s.big_model is not None:
        out["big_model"] = cone_json(s.big_model)
    if s.label:
        out["label"] = s.label
    return out


def parse_tree(data) -> SubsystemNode:
    if not isinstance(data, dict) or "system" not in data:
        raise InputError("a tree node needs 'name', 'period' and 'system'")
    kids = tuple(parse_tree(c) for c in data.get("children", []))
    period = int(data.get("period", 1))
    return SubsystemNode(str(data.get("name", "")), period, parse_system(data["system"]), kids)


def tree_json(t: SubsystemNode) -> dict:
    return {"name": t.name, "period": t.period, "system": system_json(t.system),
            "children": [tree_json(c) for c in t.children]}


# exponential polynomials ------------------------------------------------------

def parse_exppoly(data) -> ExpPoly:
    if not isinstance(data, dict) or "terms" not in data:
        raise InputError("an ExpPoly needs 'terms'")
    return ExpPoly.from_json(data)


def exppoly_json(h: ExpPoly) -> dict:
    return h.to_json()


# stratified models ------------------------------------------------------------

def parse_model(data) -> StratifiedModel:
    if not isinstance(data, dict) or "points" not in data:
        raise InputError("a model needs 'points'")
    points = [(str(p["id"]), int(p["dim"])) for p in data["points"]]
    closure = [(str(a), str(b)) for a, b in data.get("closure", [])]
    spaces = {str(k): int(v) for k, v in data.get("spaces", {}).items()}
    push = {}
    raw = data.get("pushforwards", {})
    items = raw.items() if isinstance(raw, dict) else ((f"{e['from']}<{e['to']}", e["matrix"]) for e in raw)
    for key, mat in items:
        y, x = key.split("<")
        push[(y, x)] = [[rat(a) for a in r] for r in mat]
    cones = {str(k): parse_cone(v, spaces.get(str(k))) for k, v in data.get("cones", {}).items()}
    divisors = [Divisor(str(d["name"]), frozenset(str(p) for p in d["support"]),
                        tuple(rat(a) for a in d["pairing"])) for d in data.get("divisors", [])]
    return StratifiedModel(points, closure, spaces, push, int(data.get("i", 1)), cones, divisors,
                           data.get("label", ""))


def model_json(m: StratifiedModel) -> dict:
    return {
        "label": m.label,
        "i": m.i,
        "points": [{"id": x, "dim": m.dim[x]} for x in m.ids],
        "closure": [[y, x] for y, x in m.generating_pairs],
        "spaces": {x: m.rank[x] for x in m.ids},
        "pushforwards": {f"{y}<{x}": [[rat_str(a) for a in r] for r in M] for (y, x), M in sorted(m.maps.items())},
        "cones": {x: cone_json(c) for x, c in sorted(m.cones.items()) if c is not None},
        "divisors": [{"name": d.name, "support": sorted(d.support), "pairing": [rat_str(a) for a in d.pairing]}
                     for d in m.divisors],
    }


def parse_cycle(model: StratifiedModel, data) -> GeneratedCycle:
    """{"psi": {id: vector}} or {"atoms": {id: vector}}."""
    if not isinstance(data, dict):
        raise InputError("a cycle is an object with 'psi' or 'atoms'")
    if "atoms" in data:
        return GeneratedCycle(model, {str(k): [rat(a) for a in v] for k, v in data["atoms"].items()})
    comps = data.get("psi", data)
    return GeneratedCycle.from_psi(model, {str(k): [rat(a) for a in v] for k, v in comps.items()})


def cycle_json(alpha: GeneratedCycle) -> dict:
    return {"atoms": {x: [rat_str(a) for a in v] for x, v in alpha.atoms.items() if any(v)}}


# algebraic values -------------------------------------------------------------

def value_json(v) -> Any:
    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, Fraction):
        return rat_str(v)
    return v
