import io
import json
import shutil
import subprocess
import sys

import pytest

from webflat.cli import run

NF1 = "x^3*dx+y^2*(c*x+y)*(x*dy-y*dx)"


def call(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def js(capsys, *argv):
    code, out, err = call(capsys, *argv, "--json")
    return code, json.loads(out) if out.strip() else None, err


def test_flatness(capsys):
    code, out, _ = js(capsys, "flatness", "--form", "y^3*dx+x^3*(x*dy-y*dx)")
    assert code == 0 and out == {"flat": True}


def test_flatness_cross_check(capsys):
    code, out, _ = js(capsys, "flatness", "--entry", "F2", "--cross-check")
    assert out["flat"] is True and set(out["charts"]) == {"unitA", "unitB", "slope"}


def test_curvature_contract(capsys):
    code, out, _ = js(capsys, "curvature", "--form", NF1, "--chart", "unitA")
    assert code == 0
    assert set(out) == {"chart", "web_eq", "discriminant", "K_num", "K_den", "flat"}
    assert out["web_eq"] == "q*w^3 + w*c + 1" and out["flat"] is False


def test_param_specialization(capsys):
    code, out, _ = js(capsys, "curvature", "--form", NF1, "--param", "c=0")
    assert out["flat"] is True and out["K_num"] == "0"


def test_legendre_logs_removed_factor(capsys):
    code, out, _ = js(capsys, "legendre", "--entry", "JET3", "--param", "b0=0", "--param", "b1=0",
                      "--param", "c1=0", "--param", "c2=0", "--chart", "unitB")
    assert out["web_eq"] == "p*w^3 + p*w^2*a1 + p*w*a0 - 1"
    assert out["removed"] == [{"factor": "p*w - q", "multiplicity": 1}]


def test_singular_report(capsys):
    code, out, _ = js(capsys, "singular", "--entry", "F1")
    assert out["n_points"] == 2 and out["milnor_total"] == 13
    pts = {p["coords"]: p for p in out["singular_points"]}
    assert pts["[0:0:1]"]["nu"] == 3 and pts["[0:1:0]"]["bb"] == "4"
    assert out["convex"] is True


def test_inflection_report(capsys):
    code, out, _ = js(capsys, "inflection", "--entry", "F2")
    assert out["inflection"]["transverse_part"] == "y^2"
    assert out["double_inflection"]["curves"] == ["y"]


def test_isotropy_contract(capsys):
    code, out, _ = js(capsys, "isotropy", "--entry", "F3")
    assert code == 0 and out == {"lie_dim": 0, "orbit_dim": 8, "verified_generators": 6}
    code, out, _ = js(capsys, "isotropy", "--form", "y^3*dx-x^3*dy", "--generator", "[y:x:z]")
    assert code == 0 and out["verified_generators"] == 1


def test_isotropy_reports_a_failing_generator(capsys):
    code, out, _ = js(capsys, "isotropy", "--entry", "H8")
    assert code == 1 and out["failed_generators"] == ["[4*y-x:y:alpha*z]"]


def test_degenerate_family(capsys):
    fam = json.dumps({"matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "eps"]], "scale": "-eps^4", "shift": 1})
    code, out, _ = js(capsys, "degenerate", "--entry", "F3", "--family", fam)
    assert code == 0 and out["limit_affine"] == "(y^3)*dx + (-x^3)*dy"
    assert out["checks"]["orbit_dim_after"] < out["checks"]["orbit_dim_before"]


def test_degenerate_wrong_scale_is_a_contract_error(capsys):
    fam = json.dumps({"matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "eps"]], "scale": "eps", "shift": 1})
    code, out, _ = js(capsys, "degenerate", "--entry", "F3", "--family", fam)
    assert code == 1 and out["error"] == "WrongScale" and out["valuation"] == -3


def test_degenerate_suite(capsys):
    code, out, _ = js(capsys, "degenerate", "--entry", "H1", "--suite", "F1", "--point", "[1:0:0]")
    assert code == 0 and out["checks"]["limit_like_F1"] is True


def test_usage_errors(capsys):
    assert call(capsys, "flatness", "--form", "dx+")[0] == 2
    assert call(capsys, "nonsense")[0] == 2
    assert call(capsys, "flatness", "--form", "dx", "--entry", "F1")[0] == 2
    assert call(capsys, "degenerate", "--entry", "F1")[0] == 2
    assert call(capsys, "flatness", "--entry", "F1", "--param", "oops")[0] == 2


def test_parse_error_payload(capsys):
    code, _, err = call(capsys, "flatness", "--form", "dx+")
    payload = json.loads(err)
    assert payload["offset"] == 3 and payload["line"] == 1


def test_unknown_entry_is_a_contract_error(capsys):
    code, out, _ = js(capsys, "flatness", "--entry", "H99")
    assert code == 1 and out["error"] == "UnknownEntry"


def test_stdin_input(capsys, monkeypatch):
    code, out, _ = call(capsys, "flatness", "--json", stdin="y^3*dx-x^3*dy", monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out) == {"flat": True}
    code, out, _ = call(capsys, "flatness", "--json", stdin="y^3*z;-x^3*z;x^3*y-x*y^3", monkeypatch=monkeypatch)
    assert json.loads(out) == {"flat": True}


def test_out_file(capsys, tmp_path):
    target = tmp_path / "o.json"
    assert run(["flatness", "--entry", "F1", "--json", "--out", str(target)]) == 0
    assert json.loads(target.read_text()) == {"flat": True}


def test_text_mode(capsys):
    code, out, _ = call(capsys, "singular", "--entry", "F2")
    assert "singular_points:" in out and "n_points: 1" in out


@pytest.mark.parametrize("argv", [
    ["singular", "--entry", "F5"], ["inflection", "--entry", "H2"], ["curvature", "--form", NF1],
])
def test_json_is_stable(capsys, argv):
    first = js(capsys, *argv)[1]
    second = js(capsys, *argv)[1]
    assert json.dumps(first) == json.dumps(second)


def test_catalog_verify_exit_codes(capsys):
    code, out, _ = js(capsys, "catalog-verify")
    assert code == 1 and out["mismatches"] == 1 and out["unexplained_mismatches"] == 0
    code, _, _ = call(capsys, "catalog-verify", "--accept-errata")
    assert code == 0
    code, _, _ = call(capsys, "catalog-verify", "--entry", "F4")
    assert code == 0


@pytest.mark.skipif(shutil.which("webflat") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["webflat", "flatness", "--form", "y^3*dx+x^3*(x*dy-y*dx)", "--json"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout) == {"flat": True}
