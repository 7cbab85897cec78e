import json
import subprocess
import sys

import pytest

from voronoi_maps import maps
from voronoi_maps.cli import InputError, RunConfig, dump_json, fmt_float, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, l.split(","))) for l in lines[1:]]


def test_law_n2(capsys):
    code, out, _ = run(capsys, "law", "--n", "2")
    assert code == 0
    assert out.startswith("# schema: voronoi-maps/law v1")
    probs = [float(r["probability"]) for r in csv_rows(out)]
    assert probs == pytest.approx([0, 4 / 11, 3 / 11, 4 / 11, 0], abs=1e-16)
    assert "# summary_max_deviation:" in out


def test_law_n1(capsys):
    code, out, _ = run(capsys, "law", "--n", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == 1
    assert [r["probability"] for r in doc["rows"]] == [0, 1, 0]


def test_law_rejects_bad_n(capsys):
    code, _, err = run(capsys, "law", "--n", "0")
    assert code == 2 and "error" in err


def test_mgf_rows(capsys):
    code, out, _ = run(capsys, "mgf", "--n", "6", "--mu", "0", "1")
    rows = csv_rows(out)
    assert code == 0
    assert float(rows[0]["E_N"]) == pytest.approx(1.0) and float(rows[0]["relative_gap"]) < 1e-15
    assert rows[1]["limit"].startswith("1.71828182845904")


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--edges", "2")
    assert code == 0
    assert "2,2,2,3/2" in out


@pytest.mark.parametrize("argv", [
    ["verify", "recursions", "--order", "16", "--smax", "17"],
    ["verify", "oracle", "--edges", "4"],
    ["verify", "parity", "--edges", "3"],
    ["verify", "bijections", "--edges", "3"],
    ["verify", "closed-forms", "--order", "8"],
    ["verify", "scaling", "--grid", "default"],
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    assert code == 0 and doc["pass"] is True
    assert all(c["pass"] for c in doc["checks"])


def test_verify_scaling_reports_pde_residual(capsys):
    _, out, _ = run(capsys, "verify", "scaling")
    checks = {c["check"]: c for c in json.loads(out)["checks"]}
    assert checks["PDE residual"]["residual"] < 1e-8


def test_verify_failure_has_counterexample(capsys, monkeypatch):
    from voronoi_maps import recursions

    real = recursions.closed_R
    monkeypatch.setattr(recursions, "closed_R", lambda s, K: real(s, K) + (s == 3))
    code, out, _ = run(capsys, "verify", "closed-forms", "--order", "6")
    doc = json.loads(out)
    assert code == 1 and doc["pass"] is False
    assert doc["counterexample"]["s"] == 3


def test_verify_requires_exact_backend(capsys):
    code, _, err = run(capsys, "verify", "oracle", "--backend", "float")
    assert code == 2 and "exact backend" in err


def test_verify_rejects_short_table(capsys):
    code, _, err = run(capsys, "verify", "recursions", "--order", "8", "--smax", "5")
    assert code == 2


def test_bijection_demo(capsys):
    code, out, _ = run(capsys, "bijection", "--demo", "path3", "--round-trip")
    doc = json.loads(out)
    assert code == 0
    assert doc["identity"] is True
    assert doc["areas"] == ["1/2", "1/2"]
    assert doc["iltfm"]["darts"] == 2 and doc["iltfm"]["labels"] == [1]
    assert doc["ambjorn_budd"]["darts"] == 2 and doc["delta_v1_v2"] == 1


def test_bijection_input_file(tmp_path, capsys):
    path = tmp_path / "t.json"
    t, _ = __import__("voronoi_maps.enumerate_oracle", fromlist=["x"]).build_iltfm(
        (1, 2), ((1, ()), (2, ())), ((1, ()), (2, ((1, ()),))))
    path.write_text(maps.serialize(t))
    code, out, _ = run(capsys, "bijection", "--input", str(path), "--round-trip")
    doc = json.loads(out)
    assert code == 0 and doc["identity"] is True
    assert maps.iltfm_code(maps.from_payload(doc["iltfm"])) == maps.iltfm_code(t)


def test_bijection_malformed_alpha(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"schema_version":1,"kind":"bipointed_quad","darts":2,'
                    '"alpha":[[0,0]],"sigma":[[0],[1]],"v1":0,"v2":1}')
    code, _, err = run(capsys, "bijection", "--input", str(path))
    assert code == 2 and "involution violation" in err


def test_bijection_missing_file(capsys):
    code, _, _ = run(capsys, "bijection", "--input", "/nonexistent/map.json")
    assert code == 2


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "law.json"
    assert main(["law", "--n", "3", "--format", "json", "--output", str(dest)]) == 0
    assert json.loads(dest.read_text())["N"] == 3


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nothing"])
    assert exc.value.code == 2


def test_run_config_guards_backend():
    with pytest.raises(InputError):
        RunConfig(command="oracle", backend="float")


def test_rendering():
    assert fmt_float(0.1) == "0.10000000000000001"
    with pytest.raises(ValueError):
        dump_json({"x": float("nan")})
    assert dump_json({"a": [1, 2.5, True, None], "b": None}) == '{"a":[1,2.5,true,null]}'


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "voronoi_maps.cli", "law", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "3/11" not in proc.stderr
