import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conespec.cycles import two_lines
from conespec.errors import BadParams, InputError
from conespec.exppoly import ExpPoly, cos_pair, term
from conespec.gallery import monomial_system, monomial_tree, swap_system
from conespec.harness import io
from conespec.harness.cli import main
from conespec.harness.generate import KINDS, InstanceSpec, generate, write_instance
from conespec.harness.suites import instance_specs, run_suite
from conespec.kernel import RationalMatrix

F = Fraction


# generators --------------------------------------------------------------------

@pytest.mark.parametrize("kind", KINDS)
def test_generation_is_deterministic(kind):
    a = generate(InstanceSpec.make(kind, 7))
    b = generate(InstanceSpec.make(kind, 7))
    assert io.dump(a.files) == io.dump(b.files)
    assert InstanceSpec.from_json(json.loads(a.spec.replay())) == a.spec


def test_generator_examples():
    d = generate(InstanceSpec.make("diagonal-cone", 1, entries=["2", "3"]))
    assert d.data["matrix"] == RationalMatrix.diag([2, 3])
    p = generate(InstanceSpec.make("permutation-scale", 1, perm="swap", scales=[2, 3]))
    assert p.data["matrix"] == RationalMatrix(((F(0), F(2)), (F(3), F(0))))
    m = generate(InstanceSpec.make("monomial-product", 1, exponents=[2, 3]))
    assert m.data["system"].label == "x2y3"
    s = generate(InstanceSpec.make("random-stratified", 3, strata=20))
    assert len(s.data["model"].ids) == 20


def test_bad_params_are_rejected():
    with pytest.raises(BadParams):
        generate(InstanceSpec.make("no-such-kind", 1))
    with pytest.raises(BadParams):
        generate(InstanceSpec.make("random-stratified", 1, strata=21))
    with pytest.raises(BadParams):
        generate(InstanceSpec.make("exppoly-random", 1, mode="other"))


def test_write_instance(tmp_path):
    inst = generate(InstanceSpec.make("diagonal-cone", 5, d=3))
    paths = write_instance(inst, tmp_path)
    names = {p.name for p in paths}
    assert "instance.json" in names
    assert io.parse_matrix(io.load(tmp_path / "matrix.json")) == inst.data["matrix"]


# file formats --------------------------------------------------------------------

def test_rationals():
    assert io.rat("3/4") == F(3, 4) and io.rat(2) == 2
    for bad in (0.5, True, "x", "1/0"):
        with pytest.raises(InputError):
            io.rat(bad)


small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_matrix_round_trip(rows):
    M = RationalMatrix.coerce(rows)
    assert io.parse_matrix(json.loads(json.dumps(io.matrix_json(M)))) == M


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 40), st.integers(1, 4))
def test_cone_round_trip(seed, d):
    K = generate(InstanceSpec.make("diagonal-cone", seed, d=d)).data["cone"]
    assert io.parse_cone(json.loads(json.dumps(io.cone_json(K))), d) == K


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=3))
def test_system_and_tree_round_trip(ex):
    sys = monomial_system(ex)
    back = io.parse_system(json.loads(json.dumps(io.system_json(sys))))
    assert io.system_json(back) == io.system_json(sys)
    tree = monomial_tree(ex)
    assert io.tree_json(io.parse_tree(json.loads(json.dumps(io.tree_json(tree))))) == io.tree_json(tree)


@settings(max_examples=30, deadline=None)
@given(small, st.sampled_from([F(1, 2), F(2), F(3)]), st.fractions(0, 1, max_denominator=8).filter(lambda t: 0 < t < 1))
def test_exppoly_round_trip(c, u, turn):
    h = ExpPoly([term(1, 3, 0, 1, 2, 0, 0)] + cos_pair(c, u, turn, 0, 1, 0, 0))
    assert io.parse_exppoly(json.loads(json.dumps(io.exppoly_json(h)))) == h


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 40), st.integers(1, 20))
def test_model_and_cycle_round_trip(seed, k):
    inst = generate(InstanceSpec.make("random-stratified", seed, strata=k))
    m, alpha = inst.data["model"], inst.data["cycle"]
    m2 = io.parse_model(json.loads(json.dumps(io.model_json(m))))
    assert io.model_json(m2) == io.model_json(m)
    assert io.parse_cycle(m2, io.cycle_json(alpha)).atoms == alpha.atoms


# command line ------------------------------------------------------------------

def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def test_cli_spectrum_round_trip(tmp_path, capsys):
    M = _write(tmp_path, "m.json", [[0, 2], [3, 0]])
    K = _write(tmp_path, "k.json", {"orthant": True, "dim": 2})
    code, out = _run(capsys, ["spectrum", "--matrix", M, "--cone", K, "--format", "json"])
    assert code == 0
    doc = json.loads(out.out)
    assert doc["passed"] and doc["cone_spectrum"][0]["minpoly"] == ["-6", "0", "1"]
    M2 = _write(tmp_path, "m2.json", doc["input"]["matrix"])
    K2 = _write(tmp_path, "k2.json", doc["input"]["cone"])
    _, again = _run(capsys, ["spectrum", "--matrix", M2, "--cone", K2, "--format", "json"])
    assert json.loads(again.out)["cone_spectrum"] == doc["cone_spectrum"]


def test_cli_exit_codes(tmp_path, capsys):
    assert _run(capsys, ["spectrum", "--matrix", str(tmp_path / "missing.json")])[0] == 2
    bad = _write(tmp_path, "bad.json", [[0.5]])
    assert _run(capsys, ["degrees", "--system", bad])[0] == 2
    h = ExpPoly(cos_pair(2, 3, F(1, 3), 0, 2, 0, 0), 2)
    path = _write(tmp_path, "h.json", io.exppoly_json(h))
    code, out = _run(capsys, ["exppoly", "analyze", "--input", path, "--eps0", "1/4", "--nmax", "100"])
    assert code == 1 and "PositivityViolated" in out.out
    with pytest.raises(SystemExit) as e:
        main(["spectrum"])
    assert e.value.code == 2


def test_cli_commands_run(tmp_path, capsys):
    sys_path = _write(tmp_path, "sys.json", io.system_json(swap_system(2, 3)))
    tree_path = _write(tmp_path, "tree.json", io.tree_json(monomial_tree([2, 3])))
    model = two_lines()
    model_path = _write(tmp_path, "model.json", io.model_json(model))
    cycle_path = _write(tmp_path, "cycle.json", {"atoms": {"eta1": ["1"], "eta2": ["2"]}})
    for argv in (["degrees", "--system", sys_path], ["big-spectrum", "--system", sys_path, "--cross-check"],
                 ["ample-spectrum", "--tree", tree_path], ["classify", "--tree", tree_path],
                 ["cycles", "check", "--model", model_path, "--cycle", cycle_path],
                 ["cycles", "measure", "--model", model_path, "--cycle", cycle_path, "--divisor", "p"],
                 ["generate", "--kind", "exppoly-random", "--param", "mode=\"sign-data\"", "--seed", "4"]):
        code, out = _run(capsys, argv + ["--format", "json"])
        assert code == 0, (argv, out)
        assert json.loads(out.out)["passed"]


# reports -----------------------------------------------------------------------

def test_reports_are_reproducible():
    a = run_suite("cone-theorems", 6, 11)
    b = run_suite("cone-theorems", 6, 11, workers=2)
    assert a.to_text() == b.to_text() and a.passed
    assert [i.index for i in b.instances] == list(range(6))


def test_instance_streams_depend_on_the_seed():
    assert instance_specs("cycles", 5, 1) == instance_specs("cycles", 5, 1)
    assert instance_specs("cycles", 5, 1) != instance_specs("cycles", 5, 2)


def test_negative_control_reports_one_failure_with_witness():
    rep = run_suite("exppoly", 4, 0, negative_control=True)
    assert len(rep.failures) == 1
    inst, check = rep.failures[0]
    assert inst.spec.p["mode"] == "sign-violating" and "witness point (1, 0)" in check.detail
    assert "replay=" in rep.to_text() and rep.to_text().endswith("failed=1\n")


@pytest.mark.parametrize("suite", ["degree-consistency", "exppoly", "cycles"])
def test_suites_pass(suite):
    assert run_suite(suite, 6, 3).passed
