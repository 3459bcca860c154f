import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from rootcascade.cli import CHECK_IDS, build_config, cli

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.mark.parametrize("label", ["A2", "A3", "B2"])
def test_cascade_json_matches_golden(runner: CliRunner, label: str):
    result = runner.invoke(cli, ["cascade", "--type", label, "--format", "json"])
    assert result.exit_code == 0, result.output
    assert result.output.strip() == (GOLDEN / f"cascade_{label}.json").read_text().strip()


@pytest.mark.parametrize("label", ["A2", "A3", "B2"])
def test_invariants_json_matches_golden(runner: CliRunner, label: str):
    result = runner.invoke(cli, ["invariants", "--type", label, "--format", "json"])
    assert result.exit_code == 0, result.output
    assert (
        result.output.strip() == (GOLDEN / f"invariants_{label}.json").read_text().strip()
    )


def test_family_and_rank(runner: CliRunner):
    result = runner.invoke(cli, ["cascade", "--type", "B", "--rank", "2", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["roots"] == [[1, 2], [1, 0]]


def test_cascade_text(runner: CliRunner):
    result = runner.invoke(cli, ["cascade", "--type", "G2"])
    assert result.exit_code == 0, result.output
    assert "m = 2" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["cascade", "--type", "Z9"],
        ["cascade", "--type", "B1"],
        ["cascade", "--type", "B2", "--rank", "3"],
        ["verify", "--type", "B2", "--checks", "t5"],
        ["verify", "--type", "B2", "--weight", "1,x"],
        ["invariants", "--type", "B2", "--max-degree", "0"],
        ["lipsman-wolf", "--type", "B2", "--weight", "1,-1"],
    ],
)
def test_usage_errors(runner: CliRunner, args: list[str]):
    assert runner.invoke(cli, args).exit_code == 2


def test_invariants_shortfall(runner: CliRunner):
    result = runner.invoke(cli, ["invariants", "--type", "B2", "--max-degree", "1"])
    assert result.exit_code == 1


def test_lipsman_wolf_json(runner: CliRunner):
    result = runner.invoke(
        cli, ["lipsman-wolf", "--type", "B2", "--weight", "1,0", "--format", "json"]
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    payload.pop("proportionality")
    assert payload == {
        "type": "B2",
        "lambda_fw": [1, 0],
        "lambda_star_fw": [1, 0],
        "lambda_plus_star_fw": [2, 0],
        "dimension": 5,
        "codegree": 2,
        "cascade_coeffs": [1, 1],
        "pass": True,
    }


def test_lipsman_wolf_dimension_bound(runner: CliRunner, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("ROOTCASCADE_DIMENSION_BOUND", "4")
    result = runner.invoke(cli, ["lipsman-wolf", "--type", "A2", "--weight", "1,1"])
    assert result.exit_code == 2


def test_verify_json_is_deterministic(runner: CliRunner):
    args = ["verify", "--type", "A2", "--seed", "7", "--format", "json"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0, first.output
    assert first.output == second.output

    report = json.loads(first.output)
    assert report["pass"] is True
    assert report["seed"] == 7
    assert [check["id"] for check in report["checks"]] == list(CHECK_IDS)


def test_verify_subset_with_weight(runner: CliRunner):
    result = runner.invoke(
        cli,
        ["verify", "--type", "B2", "--checks", "t9,t1", "--weight", "0,1", "--format", "json"],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert [check["id"] for check in report["checks"]] == ["t1", "t9"]
    clause_names = [clause["name"] for clause in report["checks"][1]["clauses"]]
    assert "codegree[0,1]" in clause_names


def test_verify_skips_invariant_checks_for_large_systems(runner: CliRunner):
    result = runner.invoke(
        cli, ["verify", "--type", "B4", "--checks", "t7", "--format", "json"]
    )
    assert result.exit_code == 0, result.output
    check = json.loads(result.output)["checks"][0]
    assert check["status"] == "skipped"


def test_verify_low_max_degree_skips_generator_checks(runner: CliRunner):
    result = runner.invoke(
        cli,
        [
            "verify",
            "--type",
            "B2",
            "--checks",
            "t7,joseph",
            "--max-degree",
            "1",
            "--format",
            "json",
        ],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["pass"] is True

    checks = {check["id"]: check for check in report["checks"]}
    assert list(checks) == ["joseph", "t7"]
    assert checks["t7"]["status"] == "skipped"
    joseph_clauses = {clause["name"]: clause for clause in checks["joseph"]["clauses"]}
    assert joseph_clauses["generators"]["status"] == "skipped"
    assert checks["joseph"]["status"] != "fail"


def test_out_file(runner: CliRunner, tmp_path: Path):
    target = tmp_path / "cascade.json"
    result = runner.invoke(
        cli, ["cascade", "--type", "B2", "--format", "json", "--out", str(target)]
    )
    assert result.exit_code == 0, result.output
    assert result.output == ""
    assert target.read_text().strip() == (GOLDEN / "cascade_B2.json").read_text().strip()


def test_build_config_sorts_checks():
    config = build_config("A3", None, checks="t7, t1,t7")
    assert config.checks == ("t1", "t7")
    assert config.format == "text"
