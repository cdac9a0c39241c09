import json
import math

from mahlerzeta.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_logzeta_hadamard(capsys):
    code, out, err = run_cli(
        ["logzeta", "--coin", "hadamard", "--xi", "0.785398", "--shift", "m",
         "--u", "-0.1", "--grid", "4096"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == "1"
    assert payload["command"] == "logzeta"
    assert abs(payload["result"] - (-0.0049874)) < 1e-6
    assert payload["inputs"]["u"] == -0.1


def test_mahler_log2(capsys):
    code, out, _ = run_cli(["mahler", "--poly", "X1 + 2"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["result"] - math.log(2)) < 1e-10
    assert payload["diagnostics"]["route"] == "jensen"


def test_mahler_quadrature_route(capsys):
    code, out, _ = run_cli(
        ["mahler", "--poly", "X1 + 2", "--method", "quadrature"], capsys)
    payload = json.loads(out)
    assert code == 0
    assert abs(payload["result"] - math.log(2)) < 1e-10
    assert payload["diagnostics"]["route"] == "quadrature"
    assert payload["diagnostics"]["singular_on_torus"] is False


def test_mahler_zeta_mode(capsys):
    code, out, _ = run_cli(["mahler", "--poly", "X1 + 2", "--s", "2"], capsys)
    assert code == 0
    assert abs(json.loads(out)["result"] - 5.0) < 1e-9


def test_mahler_parse_error_exit_2(capsys):
    code, out, err = run_cli(["mahler", "--poly", "X1 +* 2"], capsys)
    assert code == 2
    assert out == ""
    assert "byte 4" in err


def test_zeta_finite(capsys):
    code, out, _ = run_cli(
        ["zeta-finite", "--coin", "hadamard", "--xi", "0.785398", "--N", "1",
         "--u", "0.5"], capsys)
    assert code == 0
    assert abs(json.loads(out)["result"] - 4 / 3) < 1e-12


def test_zeta_finite_dense_route(capsys):
    code, out, _ = run_cli(
        ["zeta-finite", "--coin", "grover", "--d", "2", "--N", "2", "--u", "-0.3",
         "--dense"], capsys)
    assert code == 0
    assert json.loads(out)["diagnostics"]["route"] == "dense"


def test_zeta_finite_singular_exit_1(capsys):
    code, _, err = run_cli(
        ["zeta-finite", "--coin", "rw", "--d", "1", "--N", "2", "--u", "1.0"], capsys)
    assert code == 1
    assert "singular" in err


def test_coin_output(capsys):
    code, out, _ = run_cli(["coin", "--coin", "grover", "--d", "2"], capsys)
    payload = json.loads(out)
    assert code == 0
    assert payload["result"]["classification"] == ["unitary"]
    assert payload["result"]["entries"][0][0] == [-0.5, 0]


def test_cr_csv_format(capsys):
    code, out, _ = run_cli(
        ["cr", "--coin", "rw", "--d", "1", "--r-max", "4", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,C_r"
    assert lines[1] == "1,0"
    assert lines[2] == "2,0.5"


def test_cr_json_path_sum(capsys):
    code, out, _ = run_cli(
        ["cr", "--coin", "hadamard", "--xi", "0.785398", "--r-max", "2"], capsys)
    payload = json.loads(out)
    assert code == 0
    assert payload["result"]["method"] == "path_sum"
    assert abs(payload["result"]["values"][1][1] - 1.0) < 1e-6


def test_hyper(capsys):
    code, out, _ = run_cli(
        ["hyper", "--a", "1.5,1.5,1,1", "--b", "2,2,2", "--x", "0"], capsys)
    assert code == 0
    assert json.loads(out)["result"] == 1.0


def test_logzeta_series_mode(capsys):
    code, out, _ = run_cli(
        ["logzeta", "--coin", "rw", "--d", "1", "--u", "-0.5", "--series",
         "--r-max", "40"], capsys)
    payload = json.loads(out)
    assert code == 0
    expected = math.log((1 + math.sqrt(0.75)) / 2)
    assert abs(payload["result"] - expected) < payload["diagnostics"]["tail_bound"] + 1e-10


def test_stgf_and_lambda(capsys):
    code, out, _ = run_cli(["stgf", "--d", "1", "--u", "0.5"], capsys)
    assert code == 0
    value = json.loads(out)["result"]
    expected = math.log(4.0) + math.log((1 + math.sqrt(0.75)) / 2)
    assert abs(value - expected) < 1e-8

    code, out, _ = run_cli(["lambda", "--d", "1"], capsys)
    assert code == 0
    assert abs(json.loads(out)["result"]) < 1e-3


def test_transience_quick(capsys):
    code, out, _ = run_cli(
        ["transience", "--d", "1", "--u-values", "0.5,0.6,0.7"], capsys)
    payload = json.loads(out)
    assert code == 0
    assert payload["result"]["verdict"] == "divergent"
    assert len(payload["result"]["u_dlog"]) == 3


def test_verify_constants_suite(capsys):
    code, out, _ = run_cli(["verify", "--suite", "constants"], capsys)
    payload = json.loads(out)
    assert code == 0
    assert payload["diagnostics"]["failed"] == 0
    assert len(payload["result"]) == 3
    for report in payload["result"]:
        assert report["passed"] is True


def test_verify_tol_file(tmp_path, capsys):
    tol_file = tmp_path / "tols.json"
    tol_file.write_text(json.dumps({"catalan": 0.0}))
    code, out, _ = run_cli(["verify", "--suite", "constants",
                            "--tol-file", str(tol_file)], capsys)
    payload = json.loads(out)
    assert code == 1
    assert payload["diagnostics"]["failed"] == 1


def test_byte_identical_output(capsys):
    args = ["logzeta", "--coin", "rw", "--d", "1", "--u", "-0.5", "--grid", "256"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args + ["--threads", "4"], capsys)
    assert out1 == out2


def test_timing_flag_adds_diagnostic(capsys):
    args = ["logzeta", "--coin", "rw", "--d", "1", "--u", "-0.5", "--grid", "64"]
    _, out, _ = run_cli(args + ["--timing"], capsys)
    assert "wall_s" in json.loads(out)["diagnostics"]


def test_usage_error_exit_2(capsys):
    code, _, _ = run_cli(["no-such-command"], capsys)
    assert code == 2
    code, _, _ = run_cli(["logzeta", "--coin", "hadamard"], capsys)
    assert code == 2


def test_evolve_with_field(capsys):
    code, out, _ = run_cli(
        ["evolve", "--coin", "grover", "--d", "2", "--N", "3", "--steps", "4",
         "--emit-field"], capsys)
    payload = json.loads(out)
    assert code == 0
    assert abs(payload["result"]["total_measure"] - 1.0) < 1e-12
    field = payload["result"]["field"]
    assert len(field) == 9
    # x_1 varies fastest in the site enumeration
    assert field[0]["site"] == [0, 0]
    assert field[1]["site"] == [1, 0]
    assert field[3]["site"] == [0, 1]
