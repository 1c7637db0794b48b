"""Smoke tests for the python bindings (and a CLI round trip)."""

import json
import os
import subprocess

import pytest

import qfan


P2 = qfan.make_fan(
    columns=[["1", "0"], ["0", "1"], ["-1", "-1"]],
    cones=[[1, 2], [2, 3], [3, 1]],
)

QUADRANT = qfan.make_fan(
    columns=[["1", "0"], ["0", "1"], ["1", "2"]],
    cones=[[1, 2]],
    virtuals=[3],
    generator_set=[1, 2],
)


def test_validate_fan():
    report = qfan.validate_fan(P2)
    assert report["valid"] is True
    assert report["violations"] == []


def test_invalid_fan_reports_violation():
    line = qfan.make_fan(columns=[["1", "0"], ["-1", "0"]], cones=[[1, 2]])
    report = qfan.validate_fan(line)
    assert report["valid"] is False
    assert any(v["code"] == "StrongConvexityViolated" for v in report["violations"])


def test_natural_blowup_dichotomy():
    ok = qfan.blowup(QUADRANT, center=[1, 2], weights=["1", "2"], natural=True)
    assert ok["report"]["valid"] is True
    half = qfan.make_fan(
        columns=[["1", "0"], ["0", "1"], ["1/2", "1"]],
        cones=[[1, 2]],
        virtuals=[3],
        generator_set=[1, 2],
    )
    with pytest.raises(qfan._core.QfanError, match="NonIntegerWeight"):
        qfan.blowup(half, center=[1, 2], weights=["1/2", "1"], natural=True)


def test_irrational_blowup_witness():
    fan = qfan.make_fan(
        columns=[["1", "0"], ["0", "1"],
                 [qfan.scalar("1", "0"), qfan.scalar("0", "1")]],
        cones=[[1, 2]],
        virtuals=[3],
        generator_set=[1, 2],
        fld=qfan.sqrt2_field(),
    )
    out = qfan.blowup(fan, center=[1, 2], weights=[qfan.scalar("1", "0"),
                                                   qfan.scalar("0", "1")])
    assert out["report"]["valid"] is True
    assert out["witness"]["exceptional_source"] == [3]
    assert len(out["fan"]["cones"]) == 2


def test_fiber_strata_worked_example():
    strata = qfan.fiber_strata([[1, 1], [1, 2]], target="zero")
    assert [s["A"] for s in strata] == [[1], [2]]
    mixed = qfan.fiber_strata([[0, 2], [3, 0]], target=[2])
    assert mixed[0]["descriptor"] == "mu_3 E(w/3) x 0_{2}"


def test_reducedness():
    assert qfan.blowup_fibers_reduced([1, 1, 1]) is True
    assert qfan.blowup_fibers_reduced([2, 1]) is False
    rep = qfan.fiber_reduced([2, 1], chart=1, support=[2])
    assert rep["reduced"] is True
    assert rep["readings_agree"] is False


def test_gale_transform():
    out = qfan.gale_transform(P2)
    assert out["rank"] == 1
    assert out["k"] == [["1"], ["1"], ["1"]]


def test_s_delta():
    patterns = qfan.s_delta(P2)
    assert len(patterns) == 3
    assert patterns[0]["zero_allowed"] == [1, 2]


def test_zigzag():
    f2 = qfan.make_fan(
        columns=[["1", "0"], ["0", "1"], ["1", "1"]],
        cones=[[1, 3], [3, 2]],
    )
    quadrant = qfan.make_fan(columns=[["1", "0"], ["0", "1"]], cones=[[1, 2]])
    out = qfan.zigzag(quadrant, f2)
    assert len(out["steps"]) == 1
    assert out["steps"][0]["action"] == "blowup"


def test_normal_fan_and_lvm():
    simplex = qfan.make_polytope([["0", "0"], ["1", "0"], ["0", "1"]])
    nf = qfan.normal_fan(simplex)
    assert len(nf["cones"]) == 3
    assert qfan.validate_fan(nf)["valid"] is True
    out = qfan.lvm([[1, 0, -1, -1, -1], [0, 1, -1, -1, -1]])
    assert out["siegel"] and out["weak_hyperbolic"]
    assert len(out["polytope"]["vertices"]) == 3


def test_cobordism_roundtrip():
    base = qfan.make_fan(
        columns=[["1", "0"], ["0", "1"], ["-1", "-1"], ["0", "-1"]],
        cones=[[1, 2], [2, 3], [3, 1]],
        virtuals=[4],
        generator_set=[1, 2, 3],
    )
    cob = qfan.blowup_cobordism(base, center=[3, 1], weights=["1", "1"])
    assert cob["index"] == {"a": 1, "b": 2}
    assert cob["report"]["valid"] is True
    assert qfan.validate_cobordism(cob)["valid"] is True
    cat = qfan.catastrophe_fan(cob)
    assert len(cat["cones"]) == 3
    end0 = qfan.slice_family(cob, "-1")
    assert len(end0["cones"]) == 3


def test_exceptional_divisor_ratio():
    fan = qfan.make_fan(
        columns=[["1", "0"], ["0", "1"],
                 [qfan.scalar("1", "0"), qfan.scalar("0", "1")]],
        cones=[[1, 2]],
        virtuals=[3],
        generator_set=[1, 2],
        fld=qfan.sqrt2_field(),
    )
    div = qfan.exceptional_divisor(fan, center=[1, 2],
                                   weights=[qfan.scalar("1", "0"), qfan.scalar("0", "1")],
                                   chart=0)
    assert div["calibration"]["d"] == 1
    # the glued ray is exactly -sqrt2
    assert div["calibration"]["columns"][2][0]["coeffs"] == ["0", "-1"]


def test_svg_render():
    svg = qfan.render_fan_svg(P2)
    assert svg.startswith("<svg")
    assert svg == qfan.render_fan_svg(P2)  # deterministic


def test_in_process_cli(tmp_path):
    path = tmp_path / "p2.json"
    path.write_text(json.dumps(P2))
    assert qfan.cli(["validate", "--fan", str(path)]) == 0


@pytest.mark.skipif("QFAN_CLI" not in os.environ, reason="CLI binary path not provided")
def test_cli_binary(tmp_path):
    path = tmp_path / "p2.json"
    path.write_text(json.dumps(P2))
    proc = subprocess.run(
        [os.environ["QFAN_CLI"], "validate", "--fan", str(path)],
        capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["valid"] is True
