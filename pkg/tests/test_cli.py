"""CLI contract: reports, exit codes, determinism, output formats."""

import json

import pytest

from matsuo.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(argv, capsys):
    code, out, _ = run(argv + ["--json"], capsys)
    return code, json.loads(out)


def test_build_s5(capsys):
    code, doc = run_json(["build", "S5"], capsys)
    assert code == EXIT_OK
    assert doc["schema"] == 1
    assert doc["results"]["points"] == 10
    assert doc["results"]["lines"] == 10


def test_build_affine_reports_vertical_lines(capsys):
    code, doc = run_json(["build", "3W:A3", "--field", "Q"], capsys)
    assert code == EXIT_OK
    assert doc["results"]["points"] == 18
    assert doc["results"]["vertical_lines"] == 6


def test_build_moufang_over_f7(capsys):
    code, doc = run_json(["build", "M3:3", "--field", "F7"], capsys)
    assert code == EXIT_OK
    assert doc["results"] == {
        "points": 27, "lines": 117, "family": "moufang", "connected": True
    }


def test_build_products_export(capsys):
    code, doc = run_json(["build", "S3", "--products"], capsys)
    assert code == EXIT_OK
    alg = doc["results"]["algebra"]
    assert alg["eta"] == "1/2"
    assert len(alg["basis"]) == 3


@pytest.mark.parametrize(
    "group,dim", [("W:D4", 0), ("3W:A3", 3), ("S5", 6)]
)
def test_derive_dimensions(capsys, group, dim):
    code, doc = run_json(["derive", group], capsys)
    assert code == EXIT_OK
    assert doc["results"]["dimension"] == {"leibniz": dim, "r": dim}
    assert doc["results"]["systems_agree"] is (True if dim >= 0 else False)
    assert len(doc["results"]["basis"]) == dim


def test_classify_lines(capsys):
    code, doc = run_json(["classify-lines", "3W:A3"], capsys)
    assert code == EXIT_OK
    r = doc["results"]
    assert r["near_solid"] == 6
    assert r["vertical_near_solid"] == 6
    assert r["near_solid_lines_form_spread"] is True
    code, doc = run_json(["classify", "W:D4"], capsys)  # alias
    assert doc["results"]["near_solid"] == 0


def test_verify_suites(capsys):
    code, doc = run_json(
        ["verify", "model", "--type", "A2", "--field", "Q(sqrt:3)"], capsys
    )
    assert code == EXIT_OK
    assert doc["passed"] is True
    code, doc = run_json(
        ["verify", "equivalence", "--group", "M3:3", "--field", "F7"], capsys
    )
    assert code == EXIT_OK
    code, doc = run_json(
        ["verify", "torus", "--type", "A2", "--field", "F13", "--trials", "3"], capsys
    )
    assert code == EXIT_OK


def test_verify_all_small_field(capsys):
    code, doc = run_json(
        ["verify", "all", "--field", "F13", "--trials", "2"], capsys
    )
    assert code == EXIT_OK
    assert doc["results"]["failed"] == 0
    checks = {c["check"] for c in doc["results"]["checks"]}
    assert any(c.startswith("fusion") for c in checks)
    assert any(c.startswith("section") for c in checks)


def test_usage_errors_exit_2(capsys):
    assert run(["build", "NOPE"], capsys)[0] == EXIT_USAGE
    assert run(["build", "S4", "--field", "Fp:4"], capsys)[0] == EXIT_USAGE
    assert run(["build", "S4", "--eta", "x"], capsys)[0] == EXIT_USAGE
    assert run(["build", "S4", "--eta", "1"], capsys)[0] == EXIT_USAGE
    assert run(["verify", "model", "--field", "Q"], capsys)[0] == EXIT_USAGE
    assert run(["verify", "bogus-suite"], capsys)[0] == EXIT_USAGE
    assert run(["no-such-command"], capsys)[0] == EXIT_USAGE


def test_reports_byte_identical_across_runs(capsys):
    argv = ["verify", "torus", "--type", "A2", "--field", "F13", "--seed", "3", "--trials", "2", "--json"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert out1 == out2


def test_csv_output(capsys):
    code, out, _ = run(["classify-lines", "3W:A2", "--csv"], capsys)
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    header = lines[0].split(",")
    assert "near_solid" in header and "orbit" in header
    assert len(lines) == 1 + 12  # 12 lines in AG(2,3)


def test_out_flag_writes_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(["build", "S4", "--json", "--out", str(path)], capsys)
    assert code == EXIT_OK and out == ""
    doc = json.loads(path.read_text())
    assert doc["results"]["points"] == 6


def test_timing_flag_adds_duration(capsys):
    code, doc = run_json(["build", "S4", "--timing"], capsys)
    assert code == EXIT_OK
    assert "duration_s" in doc


def test_exact_scalars_serialized_as_strings(capsys):
    code, doc = run_json(["derive", "S3", "--field", "F7"], capsys)
    assert code == EXIT_OK
    for entry_list in doc["results"]["basis"]:
        for a, b, coeff in entry_list:
            assert isinstance(coeff, str)


def test_threads_env_validated(monkeypatch, capsys):
    monkeypatch.setenv("MATSUO_THREADS", "0")
    assert run(["build", "S3"], capsys)[0] == EXIT_USAGE
    monkeypatch.setenv("MATSUO_THREADS", "4")
    assert run(["build", "S3"], capsys)[0] == EXIT_OK
