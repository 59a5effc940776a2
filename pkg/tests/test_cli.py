"""Command-line front end: formats, exit codes, determinism."""

import json
import os
import shutil
import subprocess
import sys

import pytest

from fussdeform.cli import main

A220910_CSV = """label,offset,n,value
A220910,0,0,1/1
A220910,0,1,1/1
A220910,0,2,3/1
A220910,0,3,14/1
A220910,0,4,83/1
A220910,0,5,570/1
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_seq_a220910_golden_csv(capsys):
    code, out, _ = run(capsys, "seq", "a220910", "--n", "5")
    assert code == 0
    assert out == A220910_CSV


def test_seq_all_methods_agree(capsys):
    outputs = set()
    for method in ("recurrence", "closed_a", "closed_b", "cumulant"):
        code, out, _ = run(capsys, "seq", "a220910", "--n", "12", "--method", method)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_seq_trivial_slice(capsys):
    code, out, _ = run(capsys, "seq", "a", "--p", "1", "--t", "1", "--n", "5")
    assert code == 0
    values = [line.split(",")[3] for line in out.strip().splitlines()[1:]]
    assert values == ["1/1"] * 6


def test_seq_constellation(capsys):
    code, out, _ = run(capsys, "seq", "constellation", "--p", "2", "--n", "4")
    assert code == 0
    values = [line.split(",")[3] for line in out.strip().splitlines()[1:]]
    assert values == ["1/1", "3/1", "12/1", "56/1"]


def test_seq_raney_row(capsys):
    code, out, _ = run(capsys, "seq", "raney", "--p", "2", "--r", "1", "--n", "5")
    assert code == 0
    values = [line.split(",")[3] for line in out.strip().splitlines()[1:]]
    assert values == ["1/1", "1/1", "2/1", "5/1", "14/1", "42/1"]


def test_seq_json_format(capsys):
    code, out, _ = run(capsys, "seq", "a022558", "--n", "10", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["offset"] == 0
    assert payload["values"][:5] == ["1/1", "1/1", "2/1", "6/1", "23/1"]


def test_seq_decimal_parameter_is_exact(capsys):
    code, out, _ = run(capsys, "seq", "a", "--p", "2", "--t", "0.25", "--n", "1")
    assert code == 0
    assert out.strip().splitlines()[2].endswith(",7/4")


def test_seq_missing_parameter_is_usage_error(capsys):
    code, _, err = run(capsys, "seq", "a", "--p", "2", "--n", "3")
    assert code == 2
    assert "needs --p and --t" in err


def test_seq_rejects_bad_rational(capsys):
    code, _, err = run(capsys, "seq", "a", "--p", "2", "--t", "x/y", "--n", "3")
    assert code == 2
    assert err


def test_unknown_subject_is_argparse_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["seq", "fibonacci", "--n", "3"])
    assert info.value.code == 2


def test_transforms_routes_agree(capsys):
    code, closed, _ = run(
        capsys, "transforms", "--p", "2", "--t", "1/2", "--route", "closed",
        "--format", "json", "--series-order", "8",
    )
    assert code == 0
    code, moments, _ = run(
        capsys, "transforms", "--p", "2", "--t", "1/2", "--route", "moments",
        "--format", "json", "--series-order", "8",
    )
    assert code == 0
    a = json.loads(closed)
    b = json.loads(moments)
    assert a["m"] == b["m"]
    assert a["r"] == b["r"]
    assert a["s"] == b["s"]
    assert a["r"][1] == "3/2"  # r_1 = 2 - t


def test_transforms_closed_route_needs_supported_p(capsys):
    code, _, err = run(capsys, "transforms", "--p", "3/2", "--t", "1/5", "--route", "closed")
    assert code == 2
    assert "p in {2, 3}" in err


def test_density_csv_layout(capsys):
    code, out, _ = run(capsys, "density", "--p", "3/2", "--t", "1/5", "--grid", "10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,phi,f"
    assert len(lines) == 11
    for line in lines[1:]:
        x, phi, f = line.split(",")
        assert float(x) > 0 and float(phi) > 0
        assert float(f) >= -1e-12


def test_density_closed_route_leaves_phi_empty(capsys):
    code, out, _ = run(
        capsys, "density", "--p", "2", "--t", "1", "--route", "closed", "--grid", "4"
    )
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        assert line.split(",")[1] == ""


def test_density_routes_agree(capsys):
    code, a, _ = run(capsys, "density", "--p", "2", "--t", "1", "--grid", "10")
    assert code == 0
    code, b, _ = run(capsys, "density", "--p", "2", "--t", "1", "--route", "closed", "--grid", "10")
    assert code == 0
    for la, lb in zip(a.strip().splitlines()[1:], b.strip().splitlines()[1:]):
        assert abs(float(la.split(",")[2]) - float(lb.split(",")[2])) <= 1e-10


def test_density_negative_region_above_the_edge(capsys):
    code, out, _ = run(capsys, "density", "--p", "2", "--t", "3/2", "--grid", "100")
    assert code == 0
    values = [float(line.split(",")[2]) for line in out.strip().splitlines()[1:]]
    assert min(values) < -1e-4


def test_density_closed_route_unsupported_p(capsys):
    code, _, err = run(capsys, "density", "--p", "5/2", "--t", "1", "--route", "closed")
    assert code == 2
    assert "closed forms" in err


def test_moments_check_values(capsys):
    code, out, _ = run(
        capsys, "moments-check", "--p", "2", "--t", "1", "--n-max", "4", "--format", "json"
    )
    assert code == 0
    rows = json.loads(out)
    catalan = [1.0, 1.0, 2.0, 5.0, 14.0]
    assert [r["n"] for r in rows] == list(range(5))
    for row, expected in zip(rows, catalan):
        assert abs(row["value"] - expected) <= 1e-9
        assert row["est_error"] < 1e-8
        assert row["p"] == "2/1" and row["t"] == "1/1"


def test_gfun_table(capsys):
    code, out, _ = run(capsys, "gfun", "--p-min", "1", "--p-max", "2", "--steps", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,g"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[0] for r in rows] == ["1.0", "1.5", "2.0"]
    assert abs(float(rows[1][1]) - 0.2) <= 1e-6
    assert float(rows[2][1]) == 0.0


def test_posdef_csv_row(capsys):
    code, out, _ = run(capsys, "posdef", "--p", "2", "--t", "7/5", "--hankel-size", "8")
    assert code == 0
    assert out == "p,t,theorem,hankel_verdict\n2/1,7/5,false,indefinite\n"


def test_posdef_json_minors(capsys):
    code, out, _ = run(
        capsys, "posdef", "--p", "2", "--t", "1", "--hankel-size", "4", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["theorem_verdict"] is True
    assert payload["hankel"]["verdict"] == "positive_definite"
    assert payload["hankel"]["minors"] == ["1/1", "1/1", "1/1", "1/1"]


def test_infdiv_csv_row(capsys):
    code, out, _ = run(capsys, "infdiv", "--p", "2", "--t", "1/2", "--hankel-size", "2")
    assert code == 0
    assert out == "p,t,verdict\n2/1,1/2,indefinite\n"


def test_domain_grid_shape_and_membership(capsys):
    code, out, _ = run(capsys, "domain-grid", "--steps", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,t,theorem,hankel_verdict"
    assert len(lines) == 26
    cells = {(row.split(",")[0], row.split(",")[1]): row.split(",")[2] for row in lines[1:]}
    assert cells[("2/1", "1/1")] == "true"
    assert cells[("1/1", "2/1")] == "false"


def test_domain_grid_deterministic_and_thread_invariant(tmp_path, capsys, monkeypatch):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert main(["domain-grid", "--steps", "6", "--out", str(first)]) == 0
    monkeypatch.setenv("FUSS_DEFORM_THREADS", "3")
    assert main(["domain-grid", "--steps", "6", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_domain_grid_rejects_bad_ranges(capsys):
    code, _, err = run(capsys, "domain-grid", "--p-min", "1/2", "--steps", "3")
    assert code == 2
    code, _, err = run(capsys, "domain-grid", "--p-min", "2", "--p-max", "1", "--steps", "3")
    assert code == 2


def test_out_flag_writes_the_same_bytes(tmp_path, capsys):
    target = tmp_path / "seq.csv"
    code, out, _ = run(capsys, "seq", "a220910", "--n", "5")
    assert code == 0
    assert main(["seq", "a220910", "--n", "5", "--out", str(target)]) == 0
    assert target.read_text(encoding="utf-8") == out == A220910_CSV


def test_config_validation_errors(capsys):
    code, _, err = run(capsys, "seq", "a220910", "--n", "3", "--series-order", "65")
    assert code == 2
    code, _, err = run(capsys, "seq", "a220910", "--n", "3", "--hankel-size", "17")
    assert code == 2
    code, _, err = run(capsys, "verify", "--tol", "0")
    assert code == 2


def test_verify_subset_passes(capsys):
    code, out, _ = run(capsys, "verify", "--only", "gfun")
    assert code == 0
    assert "PASS  c7" in out
    assert out.strip().splitlines()[-1] == "1/1 passed"


def test_verify_single_criterion_by_identifier(capsys):
    code, out, _ = run(capsys, "verify", "--only", "c4")
    assert code == 0
    assert "PASS  c4" in out


def test_verify_unknown_filter(capsys):
    code, _, err = run(capsys, "verify", "--only", "nonsense")
    assert code == 2


def test_subprocess_module_invocation():
    env = dict(os.environ, FUSS_DEFORM_BACKEND="python")
    result = subprocess.run(
        [sys.executable, "-m", "fussdeform.cli", "seq", "a220910", "--n", "5"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert result.returncode == 0
    assert result.stdout == A220910_CSV


def test_console_script_if_installed():
    exe = shutil.which("fussdeform")
    if exe is None:
        pytest.skip("console script not on PATH")
    result = subprocess.run(
        [exe, "seq", "constellation", "--p", "3", "--n", "3"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout.strip().splitlines()[1:] == [
        "constellation(p=3),1,1,1/1",
        "constellation(p=3),1,2,6/1",
        "constellation(p=3),1,3,54/1",
    ]
