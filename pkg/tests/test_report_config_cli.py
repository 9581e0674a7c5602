import io
import json
from pathlib import Path

import pytest

from conftest import pipeline_for
from hgman.analysis import analyze
from hgman.cli import DEFAULT_SEED, parse_lambda, random_lambda, run_cli
from hgman.config import ConfigError, load_config, parse_config
from hgman.example import build_example_w4
from hgman.report import AnalysisReport, sparse_table

CONFIGS = Path(__file__).resolve().parent.parent / "demos" / "configs"
BASE = {"dim": 4, "metric": {"diagonal": [1, 1, -1, -1]}}


def cli(*argv):
    out = io.StringIO()
    code = run_cli(list(argv), out)
    return code, out.getvalue()


def test_sparse_table_is_one_based():
    assert sparse_table([[0, 1], [0, 0]]) == {"1,2": "1"}


def test_report_round_trip(golden_pipeline):
    p = golden_pipeline
    report = analyze(p.M, p)
    text = report.dumps()
    again = AnalysisReport.loads(text)
    assert again == report and again.dumps() == text
    data = json.loads(text)
    assert data["scalars"]["tau"] == "-120" and data["ok"] is True
    assert data["tables"]["theta"] == {"1": "16", "2": "12", "3": "-8", "4": "-4"}


def test_report_failures_include_golden():
    report = analyze(pipeline_for((0, 0, 0, 0)).M)
    assert report.ok
    report.golden_diffs = {"R": {"ok": False}}
    assert report.failures == ["golden:R"]


@pytest.mark.parametrize(
    "data, where",
    [
        ([], "<root>"),
        ({**BASE, "dim": 3}, "dim"),
        ({**BASE, "colour": 1}, "colour"),
        ({**BASE, "structure_constants": [[1, 2, 5, 1]]}, "structure_constants[0][2]"),
        ({**BASE, "structure_constants": [[1, 1, 2, 1]]}, "structure_constants[0]"),
        ({**BASE, "structure_constants": [[1, 2, 3, 1], [2, 1, 3, 1]]}, "structure_constants[1]"),
        ({**BASE, "structure_constants": [[1, 2, 3, "x/y"]]}, "structure_constants[0][3]"),
        ({"dim": 4, "metric": {"diagonal": [1, 1, "1/0", -1]}}, "metric.diagonal[2]"),
        ({"dim": 4}, "metric"),
        ({**BASE, "J": "other"}, "J"),
        ({**BASE, "J": [[[0] * 4] * 4] * 2 + [[[0] * 3] * 4]}, "J[2][0]"),
        ({"dim": 8, "lambdas": [1, 2, 3, 4]}, "dim"),
        ({**BASE, "lambdas": [1, 2, 3, 4]}, "metric"),
    ],
)
def test_config_errors_name_the_field(data, where):
    with pytest.raises(ConfigError) as info:
        parse_config(data)
    assert info.value.where == where


def test_config_build_errors():
    bad_jacobi = {**BASE, "structure_constants": [[1, 2, 2, 1], [2, 3, 3, 1]]}
    with pytest.raises(ConfigError, match="Jacobi"):
        parse_config(bad_jacobi).build()
    degenerate = {"dim": 4, "metric": {"diagonal": [1, 1, 0, -1]}}
    with pytest.raises(ConfigError) as info:
        parse_config(degenerate).build()
    assert info.value.where == "metric/J"


def test_json_syntax_error_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "dim": 4,\n  oops\n}')
    with pytest.raises(ConfigError, match="line 3 column 3"):
        load_config(path)


def test_explicit_config_equals_lambda_family():
    explicit = load_config(CONFIGS / "explicit_example4.json").build()
    family = build_example_w4((1, 2, 3, 4))
    assert (explicit.spec.c == family.spec.c).all()
    assert all(a == b for a, b in zip(explicit.J, family.J))


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIGS.glob("*.json")))
def test_shipped_configs_analyze_cleanly(name):
    code, out = cli("analyze", "--config", str(CONFIGS / name))
    assert code == 0, out
    assert out.rstrip().endswith("all checks passed")


def test_analyze_abelian_is_K(tmp_path):
    target = tmp_path / "r.json"
    assert cli("analyze", "--config", str(CONFIGS / "abelian4.json"), "--report", str(target))[0] == 0
    data = json.loads(target.read_text())
    assert data["classification"]["in_K"] and data["scalars"]["tau"] == "0"


def test_example_report(tmp_path):
    target = tmp_path / "r.json"
    code, out = cli("example", "--lambda", "1,2,3,4", "--report", str(target))
    assert code == 0
    text = target.read_text()
    assert '"tau": "-120"' in text
    assert "published form K: differs" in out


def test_example_default_seed_is_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    out_a = cli("example", "--report", str(a))[1]
    out_b = cli("example", "--seed", str(DEFAULT_SEED), "--report", str(b))[1]
    assert out_a == out_b and a.read_text() == b.read_text()
    assert f"seed {DEFAULT_SEED}" in out_a


def test_random_lambda_reproducible():
    assert random_lambda(5) == random_lambda(5)
    assert parse_lambda("1/2, -3,0,2")[0].denominator == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["example", "--lambda", "1,2,3"],
        ["example", "--lambda", "1,2,x,4"],
        ["analyze", "--config", "/nonexistent.json"],
        ["prove-kahlerlike", "--n", "3"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    assert cli(*argv)[0] == 2


def test_help_exits_0():
    assert cli("--help")[0] == 0


def test_failing_check_exits_1(tmp_path, monkeypatch):
    import hgman.cli as cli_mod

    real = cli_mod.verify_golden_tables

    def broken(lam):
        report = real(lam)
        report.golden_diffs["R"]["ok"] = False
        return report

    monkeypatch.setattr(cli_mod, "verify_golden_tables", broken)
    target = tmp_path / "r.json"
    code, out = cli("example", "--lambda", "1,2,3,4", "--report", str(target))
    assert code == 1 and "FAILED: golden:R" in out
    assert json.loads(target.read_text())["ok"] is False


def test_prove_kahlerlike():
    code, out = cli("prove-kahlerlike", "--n", "1")
    assert code == 0 and "nullity 0" in out and "rank 256" in out
    code, out = cli("prove-kahlerlike", "--n", "1", "--curvature-only")
    assert code == 0 and "nullity 20" in out


def test_identities_command():
    code, out = cli("identities", "--config", str(CONFIGS / "heisenberg_like4.json"))
    assert code == 0
    assert "skip T= (not a W-manifold)" in out and "pass jacobi" in out
