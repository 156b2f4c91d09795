import json
import math

import pytest

from adelic_roth.cli import main
from adelic_roth.config import load_config, load_matrix
from adelic_roth.errors import ParseError, SchemaError
from adelic_roth.report import CSV_HEADER

EIGHTH_CONFIG = """\
curve = "Q"
alphas = ["1"]
S = ["inf"]
epsilon = 1.0
A = "1/8"
height_bound = 2.0794415416798357
[theta]
inf = 3.0
"""

HGAP_PASS_MATRIX = """\
curve = "Q(t)"
alphas = [["1", "1"]]
betas = ["t", "t^300"]
[theta]
t = 0.001
[partition]
1 = ["t"]
"""

def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# -- config loading --------------------------------------------------------------


def test_load_config_minimal(tmp_path):
    cfg = load_config(_write(tmp_path, "c.toml", EIGHTH_CONFIG))
    assert cfg.curve == "Q" and cfg.alphas == ["1"]
    assert cfg.tolerance == 1e-9 and cfg.precision_bits == 128
    curve, spec = cfg.build_spec()
    assert spec.n == 1


def test_load_config_missing_epsilon(tmp_path):
    text = EIGHTH_CONFIG.replace("epsilon = 1.0\n", "")
    with pytest.raises(SchemaError, match="epsilon"):
        load_config(_write(tmp_path, "c.toml", text))


def test_load_config_rejects_unknown_and_conflicts(tmp_path):
    with pytest.raises(SchemaError, match="unknown field"):
        load_config(_write(tmp_path, "c.toml", "bogus = 1\n" + EIGHTH_CONFIG))
    with pytest.raises(SchemaError, match="only one"):
        load_config(_write(tmp_path, "c.toml", "logA = 0.0\n" + EIGHTH_CONFIG))
    with pytest.raises(SchemaError, match="not a rational"):
        load_config(_write(tmp_path, "c.toml", EIGHTH_CONFIG.replace('"1/8"', '"octopus"')))


def test_load_config_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_config(_write(tmp_path, "c.toml", "curve = [unclosed"))
    with pytest.raises(ParseError):
        load_config(str(tmp_path / "missing.toml"))


def test_small_theta_loads_then_fails_validation(tmp_path):
    """schema accepts an undersized theta; validate_spec reports it downstream"""
    text = EIGHTH_CONFIG.replace("inf = 3.0", "inf = 2.5")
    cfg = load_config(_write(tmp_path, "c.toml", text))
    _, spec = cfg.build_spec()
    from adelic_roth import validate_spec

    report = validate_spec(spec)
    assert not report.ok and any("theta integral" in v for v in report.violations)


# -- census command ------------------------------------------------------------------


def test_census_pass_exit_zero(tmp_path, capsys):
    cfg = _write(tmp_path, "c.toml", EIGHTH_CONFIG)
    out = str(tmp_path / "out")
    code = main(["census", "--config", cfg, "--out", out])
    assert code == 0
    body = json.loads((tmp_path / "out" / "report.json").read_text())
    assert body["verdicts"]["overall"] == "pass"
    assert body["census"]["solution_count"] == 61
    assert body["count_bound"]["bound"] == pytest.approx(1100599.4797663183)
    capsys.readouterr()


def test_census_validation_failure_exit_one(tmp_path, capsys):
    text = EIGHTH_CONFIG.replace("inf = 3.0", "inf = 2.5")
    code = main(["census", "--config", _write(tmp_path, "c.toml", text)])
    captured = capsys.readouterr()
    assert code == 1
    assert "theta integral" in captured.err


def test_census_capacity_exit_two(tmp_path, capsys):
    text = EIGHTH_CONFIG.replace("height_bound = 2.0794415416798357", "height_bound = 12.0")
    code = main(["census", "--config", _write(tmp_path, "c.toml", text)])
    assert code == 2
    capsys.readouterr()


def test_census_schema_failure_exit_one(tmp_path, capsys):
    text = EIGHTH_CONFIG.replace("epsilon = 1.0\n", "")
    code = main(["census", "--config", _write(tmp_path, "c.toml", text)])
    assert code == 1
    capsys.readouterr()


def test_census_deterministic_across_runs_and_workers(tmp_path, capsys):
    cfg = _write(tmp_path, "c.toml", EIGHTH_CONFIG)
    bodies = []
    for i, workers in enumerate((1, 1, 4)):
        out = str(tmp_path / f"out{i}_{workers}")
        code = main(["census", "--config", cfg, "--workers", str(workers), "--out", out])
        assert code == 0
        bodies.append((tmp_path / f"out{i}_{workers}" / "report.json").read_bytes())
    capsys.readouterr()
    assert bodies[0] == bodies[1] == bodies[2]


def test_census_csv_agrees_with_json(tmp_path, capsys):
    cfg = _write(tmp_path, "c.toml", EIGHTH_CONFIG)
    out = str(tmp_path / "out")
    assert main(["census", "--config", cfg, "--out", out]) == 0
    capsys.readouterr()
    body = json.loads((tmp_path / "out" / "report.json").read_text())
    lines = (tmp_path / "out" / "solutions.csv").read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == body["census"]["solution_count"]
    for row, jrow in zip(rows, body["census"]["solutions"]):
        assert row[0] == jrow["element"]
        assert float(row[1]) == jrow["height"]
        assert (row[2] == "1") == jrow["is_big"]
        if jrow["defect"] is None:
            assert row[3] == ""
        else:
            assert float(row[3]) == pytest.approx(jrow["defect"])


def test_census_report_carries_audit_quantities(tmp_path, capsys):
    cfg = _write(tmp_path, "c.toml", EIGHTH_CONFIG)
    out = str(tmp_path / "out")
    assert main(["census", "--config", cfg, "--out", out]) == 0
    capsys.readouterr()
    body = json.loads((tmp_path / "out" / "report.json").read_text())
    census = body["census"]
    assert census["h2"] == pytest.approx(math.log(2))
    assert "big_threshold" in census
    assert body["gap2"]["log_gamma"] == pytest.approx(1462.7246563582517)
    assert body["validation"]["N"] == 306
    assert body["tool"]["name"] == "adelic-roth"


# -- check subcommands ------------------------------------------------------------------


def test_check_height(capsys):
    assert main(["check", "height", "Q", "3/2"]) == 0
    out = capsys.readouterr().out
    assert "1.09861228867" in out


def test_check_product_formula(capsys):
    assert main(["check", "product-formula", "Q", "12/5"]) == 0
    out = capsys.readouterr().out
    assert "exactly zero" in out and "pass" in out


def test_check_liouville(capsys):
    assert main(["check", "liouville", "Q", "1", "3/2", "inf"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out
    assert main(["check", "liouville", "Q", "1", "2", ""]) == 0
    capsys.readouterr()


def test_check_params_and_bound(capsys):
    assert main(["check", "params", "1", "1.0"]) == 0
    out = capsys.readouterr().out
    assert "N=306" in out and "1462.72" in out and "1.1006e+06" in out
    assert main(["check", "bound", "1", "0.1"]) == 0
    out = capsys.readouterr().out
    assert "N=3397" in out


def test_check_hgap_matrix(tmp_path, capsys):
    path = _write(tmp_path, "m.toml", HGAP_PASS_MATRIX)
    assert main(["check", "hgap", "--matrix", path]) == 0
    out = capsys.readouterr().out
    assert "h-gap: pass" in out and "1/32" in out

    fail = HGAP_PASS_MATRIX.replace("t^300", "t^100")
    path = _write(tmp_path, "m2.toml", fail)
    assert main(["check", "hgap", "--matrix", path]) == 1
    capsys.readouterr()


def test_check_hgap_exact_tie_is_uncertain(tmp_path, capsys):
    beta2 = str(2**284)
    text = (
        'curve = "Q"\nalphas = [["1", "1"]]\n' f'betas = ["2", "{beta2}"]\n'
    )
    path = _write(tmp_path, "tie.toml", text)
    assert main(["check", "hgap", "--matrix", path]) == 2
    out = capsys.readouterr().out
    assert "uncertain" in out


def test_check_column_bounding_matrix(tmp_path, capsys):
    text = (
        'curve = "Q"\nalphas = [["1"]]\nbetas = ["3/2"]\n'
        "[theta]\ninf = 0.1\n[partition]\n1 = [\"inf\"]\n"
    )
    path = _write(tmp_path, "cb.toml", text)
    assert main(["check", "column-bounding", "--matrix", path]) == 0
    out = capsys.readouterr().out
    assert "column bounding: pass" in out

    text_fail = text.replace("inf = 0.1", "inf = 0.2")
    path = _write(tmp_path, "cb2.toml", text_fail)
    assert main(["check", "column-bounding", "--matrix", path]) == 1
    capsys.readouterr()


def test_load_matrix_schema_errors(tmp_path):
    with pytest.raises(SchemaError):
        load_matrix(_write(tmp_path, "m.toml", 'curve = "Q"\nalphas = []\nbetas = ["1"]\n'))
    with pytest.raises(SchemaError):
        load_matrix(_write(tmp_path, "m.toml", 'curve = "X"\nalphas = [["1"]]\nbetas = ["2"]\n'))
