import json

import pytest

from hamlattice.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate-exceptional", "--k", "8", "--json")
    assert code == 0 and json.loads(out)["count"] == 240


def test_find_word(capsys):
    code, out, _ = run(capsys, "find-word", "--from", "E1", "--to", "3L-2E1-E2-E3-E4-E5-E6-E7", "--max", "4")
    assert code == 0 and out.strip() == "R123 R145 R167"
    code, _, _ = run(capsys, "find-word", "--from", "E1", "--to", "L", "--k", "3", "--max-depth", "2")
    assert code == 1


def test_global_flag_before_command(capsys):
    code, out, _ = run(capsys, "--json", "snf", "--matrix", "6,0;0,4")
    assert code == 0 and json.loads(out)["invariant_factors"] == [2, 12]


def test_dictionary(capsys):
    code, out, _ = run(capsys, "verify-dictionary", "--name", "hat7", "--json")
    assert code == 0 and json.loads(out)["anti_fixes_epsilon"] is True
    code, _, err = run(capsys, "verify-dictionary", "--name", "nope")
    assert code == 2 and "unknown dictionary" in err


def test_resolve_polytope_svg(capsys, tmp_path):
    svg = tmp_path / "out.svg"
    code, out, _ = run(capsys, "resolve-polytope", "--svg", str(svg), "--json")
    data = json.loads(out)
    assert code == 0 and data["self_intersections"] == [-2, -2, -1, -2, -3, -1, -2, -2, -2, -1]
    assert svg.read_text().startswith("<svg")


def test_reduced_and_min_area(capsys):
    code, out, _ = run(capsys, "reduced-class", "--l", "4", "--kappa", "-3", "--json")
    assert json.loads(out)["omega"]["values"] == ["1/2", "1/4"]
    code, out, _ = run(capsys, "min-area", "--k", "8", "--lambda", "1/2", "--eps", "1/100", "--json")
    assert json.loads(out)["argmin"] == ["E8"]


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--target", "6L-2E1-2E2-2E3-3E4-2E5-2E6-2E7-2E8",
                       "--profile", "step2-generic", "--json")
    assert code == 0 and json.loads(out)["count"] == 0
    code, _, err = run(capsys, "decompose", "--target", "6L", "--budget", "3")
    assert code == 2 and "resource" in err


def test_cubic(capsys):
    code, out, _ = run(capsys, "cubic", "verify", "--preset", "mukai", "--json")
    assert code == 0 and all(c["pass"] for c in json.loads(out)["checks"])
    code, out, _ = run(capsys, "cubic", "point", "--poly", "z3*(z1^2-z2^2)-z1^3", "--at", "0,1,0")
    assert "flex: True" in out


def test_fixed_points_and_slice(capsys, tmp_path):
    code, out, _ = run(capsys, "fixed-points", "--l", "5", "--json")
    assert json.loads(out)["ring_constant"] == 22
    svg = tmp_path / "slice.svg"
    code, out, _ = run(capsys, "slice", "--l", "4", "--x3", "3", "--svg", str(svg))
    assert code == 0 and "4 facets" in out and svg.exists()
    code, _, _ = run(capsys, "slice", "--l", "4", "--x3", "9")
    assert code == 2


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--l", "4", "--json")
    data = json.loads(out)
    assert code == 0 and data["fixed_points"]["l"] == 4


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    code, _, _ = run(capsys, "snf", "--matrix", "x")
    assert code == 2
    code, _, _ = run(capsys, "verify-all", "--suite", "nope")
    assert code == 2


def test_verify_suite_json_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify-all", "--suite", "toric", "--json")
    code2, out2, _ = run(capsys, "verify-all", "--suite", "toric", "--json")
    assert code1 == 0 and out1 == out2
