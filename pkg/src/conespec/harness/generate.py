"""Deterministic random instance generators.

Every family is built so that its hypotheses hold by construction: the matrices
of diagonal-cone and permutation-scale instances map the orthant onto itself,
monomial-product systems are split monomial maps with their full coordinate
subproduct tree, stratified models use pushforwards D_x D_y^-1 between positive
diagonals (so every chain composes to the same map), and positive ExpPolys have a
dominant block that outweighs everything else.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..cones import PolyhedralCone
from ..cycles import Divisor, GeneratedCycle, StratifiedModel
from ..errors import BadParams
from ..exppoly import ExpPoly, cos_pair, term
from ..gallery import monomial_system, monomial_tree
from ..kernel.linalg import RationalMatrix
from . import io

KINDS = ("diagonal-cone", "monomial-product", "permutation-scale", "random-stratified", "exppoly-random")
EXPPOLY_MODES = ("positive", "sign-data", "sign-violating")
MAX_STRATA = 20


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    seed: int
    params: tuple = ()

    @classmethod
    def make(cls, kind: str, seed: int, **params) -> "InstanceSpec":
        return cls(kind, int(seed), tuple(sorted((k, _freeze(v)) for k, v in params.items())))

    @property
    def p(self) -> dict:
        return dict(self.params)

    def to_json(self) -> dict:
        return {"kind": self.kind, "seed": self.seed, "params": {k: _thaw(v) for k, v in self.params}}

    @classmethod
    def from_json(cls, data: dict) -> "InstanceSpec":
        return cls.make(data["kind"], data["seed"], **data.get("params", {}))

    def replay(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def _freeze(v):
    return tuple(_freeze(a) for a in v) if isinstance(v, (list, tuple)) else v


def _thaw(v):
    return [_thaw(a) for a in v] if isinstance(v, tuple) else v


@dataclass
class Instance:
    spec: InstanceSpec
    data: dict = field(default_factory=dict)      # parsed objects
    files: dict = field(default_factory=dict)     # file name -> JSON payload


def _rng(spec: InstanceSpec) -> random.Random:
    if not -(2 ** 63) <= spec.seed < 2 ** 64:
        raise BadParams("seed must be a 64-bit integer")
    return random.Random(f"{spec.kind}:{spec.seed}:{spec.params}")


def _pos_rat(rng, num=9, den=4) -> Fraction:
    return Fraction(rng.randint(1, num), rng.randint(1, den))


def _int_param(p, name, default, lo, hi) -> int:
    v = p.get(name, default)
    if not isinstance(v, int) or isinstance(v, bool) or not lo <= v <= hi:
        raise BadParams(f"{name} must be an integer in [{lo}, {hi}], got {v!r}")
    return v


def _rat_list(values, name) -> list[Fraction]:
    try:
        out = [io.rat(a) for a in values]
    except Exception as e:
        raise BadParams(f"{name}: {e}") from e
    if any(a <= 0 for a in out):
        raise BadParams(f"{name} must be positive")
    return out


# families -------------------------------------------------------------------

def _diagonal_cone(spec, rng) -> Instance:
    p = spec.p
    if "entries" in p:
        entries = _rat_list(p["entries"], "entries")
    else:
        d = _int_param(p, "d", rng.randint(1, 6), 1, 12)
        entries = [_pos_rat(rng) for _ in range(d)]
    M = RationalMatrix.diag(entries)
    K = PolyhedralCone.orthant(len(entries))
    return Instance(spec, {"matrix": M, "cone": K, "entries": entries},
                    {"matrix.json": io.matrix_json(M), "cone.json": io.cone_json(K)})


def _permutation_scale(spec, rng) -> Instance:
    p = spec.p
    perm = p.get("perm")
    if perm == "swap":
        perm = (1, 0)
    if perm is None:
        d = _int_param(p, "d", len(p["scales"]) if "scales" in p else rng.randint(1, 5), 1, 12)
        perm = list(range(d))
        rng.shuffle(perm)
    perm = [int(a) for a in perm]
    d = len(perm)
    if sorted(perm) != list(range(d)):
        raise BadParams(f"perm must be a permutation of 0..{d - 1}")
    scales = _rat_list(p["scales"], "scales") if "scales" in p else [_pos_rat(rng, 6, 3) for _ in range(d)]
    if len(scales) != d:
        raise BadParams("scales and perm have different lengths")
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        rows[i][perm[i]] = scales[i]
    M = RationalMatrix(tuple(tuple(r) for r in rows))
    K = PolyhedralCone.orthant(d)
    return Instance(spec, {"matrix": M, "cone": K, "perm": perm, "scales": scales},
                    {"matrix.json": io.matrix_json(M), "cone.json": io.cone_json(K)})


def _monomial_product(spec, rng) -> Instance:
    p = spec.p
    if "exponents" in p:
        ex = [int(e) for e in p["exponents"]]
        if not ex or any(e < 1 for e in ex):
            raise BadParams("exponents must be positive integers")
    else:
        k = _int_param(p, "k", rng.randint(1, 4), 1, 6)
        ex = [rng.randint(1, 5) for _ in range(k)]
    label = "x2y3" if ex == [2, 3] else f"monomial{tuple(ex)}"
    sys = monomial_system(ex, label)
    tree = monomial_tree(ex, period_two=bool(p.get("period_two", True)))
    return Instance(spec, {"system": sys, "tree": tree, "exponents": ex},
                    {"system.json": io.system_json(sys), "tree.json": io.tree_json(tree)})


def _random_stratified(spec, rng) -> Instance:
    p = spec.p
    n = _int_param(p, "strata", rng.randint(2, MAX_STRATA), 1, MAX_STRATA)
    i = _int_param(p, "i", 1, 0, 3)
    r = _int_param(p, "rank", rng.randint(1, 2), 1, 4)
    top = _int_param(p, "max_dim", rng.randint(1, 3), 0, 5)
    dims = sorted(rng.randint(0, top) for _ in range(n))
    dims[-1] = top
    ids = [f"s{j:02d}" for j in range(n)]
    points = list(zip(ids, dims))
    closure = []
    for a, (x, dx) in enumerate(points):
        lower = [y for y, dy in points[:a] if dy < dx]
        for y in lower:
            if rng.random() < 0.35:
                closure.append((y, x))
    spaces = {x: (r if d >= i else 0) for x, d in points}
    diag = {x: [_pos_rat(rng, 5, 3) for _ in range(r)] for x in ids}
    push = {}
    for y, x in closure:
        if spaces[x] and spaces[y]:
            push[(y, x)] = [[diag[x][a] / diag[y][a] if a == b else Fraction(0) for b in range(r)] for a in range(r)]
        else:
            push[(y, x)] = []
    cones = {x: PolyhedralCone.orthant(r) for x in ids if spaces[x]}
    model0 = StratifiedModel(points, closure, spaces, push, i, cones)
    # a compatible pairing: block c / D_x at every point, for one positive covector c
    c = [_pos_rat(rng, 4, 2) for _ in range(r)]
    pairing = []
    for x in model0.ids:
        if spaces[x]:
            pairing.extend(c[a] / diag[x][a] for a in range(r))
    x0 = rng.choice(ids)
    D = Divisor("D", model0.principal(x0), tuple(pairing))
    model = StratifiedModel(points, closure, spaces, push, i, cones, [D], label=f"stratified-{spec.seed}")
    atoms = {}
    for x in ids:
        if spaces[x] and rng.random() < 0.6:
            atoms[x] = [Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(r)]
    alpha = GeneratedCycle(model, atoms)
    off = {x: v for x, v in atoms.items() if x not in D.support}
    off_alpha = GeneratedCycle(model, off)
    return Instance(spec, {"model": model, "cycle": alpha, "off_divisor_cycle": off_alpha},
                    {"model.json": io.model_json(model), "cycle.json": io.cycle_json(alpha)})


def _turn(rng, dens=(2, 3, 4, 5, 6)) -> Fraction:
    q = rng.choice(dens)
    return Fraction(rng.randint(1, q - 1), q)


def _exppoly_random(spec, rng) -> Instance:
    p = spec.p
    mode = p.get("mode", "positive")
    if mode not in EXPPOLY_MODES:
        raise BadParams(f"mode must be one of {EXPPOLY_MODES}")
    if mode == "sign-data":
        k = _int_param(p, "pairs", rng.randint(1, 3), 1, 6)
        turns, entries = set(), []
        while len(turns) < k:
            th = _turn(rng, (3, 4, 5, 6, 7, 8))
            if th in turns or (1 - th) in turns:
                continue
            turns.add(th)
            re, im = Fraction(rng.randint(-5, 5), rng.randint(1, 3)), Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            if re == 0 and im == 0:
                re = Fraction(1)
            entries += [(re, im, th), (re, -im, 1 - th)]
        if rng.random() < 0.5:
            entries.append((Fraction(rng.choice([-3, -2, -1, 1, 2, 3])), Fraction(0), Fraction(1, 2)))
        data = [[str(a) for a in e] for e in entries]
        return Instance(spec, {"sign_data": entries}, {"sign_data.json": data})
    if mode == "sign-violating":
        h = ExpPoly(cos_pair(2, 3, Fraction(1, 3), 0, 2, 0, 0), 2)
        return Instance(spec, {"exppoly": h}, {"exppoly.json": io.exppoly_json(h)})
    arity = _int_param(p, "arity", 2, 1, 2)
    beta = Fraction(rng.randint(2, 6), rng.randint(1, 2))
    gamma = Fraction(rng.randint(1, 4), rng.randint(1, 2)) if arity == 2 else None
    a = rng.randint(0, 2)
    b = rng.randint(0, 2) if arity == 2 else None
    two = dict(v_mod=gamma, t=b) if arity == 2 else {}
    lower, budget = [], Fraction(0)
    for _ in range(rng.randint(0, 3)):
        u = beta / 2 / rng.randint(1, 2)
        s = rng.randint(0, a)
        amp = Fraction(rng.randint(1, 4), rng.randint(1, 2))
        if arity == 2:
            v = gamma / rng.randint(1, 2)
            lt = dict(v_mod=v, t=b)
        else:
            lt = {}
        if rng.random() < 0.5:
            lower += cos_pair(amp, u, _turn(rng), s, v_turn=0, **lt) if arity == 2 else cos_pair(amp, u, _turn(rng), s)
        else:
            lower.append(term(amp * rng.choice([-1, 1]), u, 0, s, **lt))
        budget += amp
    pairs, pair_budget = [], Fraction(0)
    for _ in range(rng.randint(0, 2)):
        amp = Fraction(rng.randint(1, 3), rng.randint(1, 3))
        vt = _turn(rng) if arity == 2 and rng.random() < 0.5 else 0
        if arity == 2:
            pairs += cos_pair(amp, beta, _turn(rng), a, gamma, vt, b)
        else:
            pairs += cos_pair(amp, beta, _turn(rng), a)
        pair_budget += amp
    A = pair_budget + budget + Fraction(rng.randint(1, 4), rng.randint(1, 2))
    lead = term(A, beta, 0, a, **two) if arity == 2 else term(A, beta, 0, a)
    h = ExpPoly([lead] + pairs + lower, arity)
    return Instance(spec, {"exppoly": h}, {"exppoly.json": io.exppoly_json(h)})


_FAMILIES = {
    "diagonal-cone": _diagonal_cone,
    "monomial-product": _monomial_product,
    "permutation-scale": _permutation_scale,
    "random-stratified": _random_stratified,
    "exppoly-random": _exppoly_random,
}


def generate(spec: InstanceSpec) -> Instance:
    if spec.kind not in _FAMILIES:
        raise BadParams(f"unknown kind {spec.kind!r}; expected one of {KINDS}")
    return _FAMILIES[spec.kind](spec, _rng(spec))


def write_instance(inst: Instance, outdir) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, payload in sorted(inst.files.items()):
        path = out / name
        io.dump(payload, path)
        paths.append(path)
    path = out / "instance.json"
    io.dump(inst.spec.to_json(), path)
    paths.append(path)
    return paths
