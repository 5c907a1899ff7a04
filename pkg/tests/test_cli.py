"""CLI tests: the full workflow plus the exit-code contract."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from riddlec.cli import main
from riddlec.store import CSV_HEADER, save_project


@pytest.fixture()
def runner():
    return CliRunner()


INIT_FLAGS = [
    "--asset", "rail control centre",
    "--threats", "sabotage of signalling",
    "--losses", "2M euro per outage day",
    "--budget", "400k euro",
]


def init_project(runner, tmp_path, name="depot"):
    result = runner.invoke(
        main, ["init", str(tmp_path), "--name", name, *INIT_FLAGS, "--non-interactive"]
    )
    assert result.exit_code == 0, result.output
    return str(tmp_path / f"{name}.riddle.json")


def invoke(runner, path, args):
    return runner.invoke(main, ["--project", path, *args])


class TestInit:
    def test_creates_project_file(self, runner, tmp_path):
        result = runner.invoke(
            main, ["init", str(tmp_path), "--name", "depot", *INIT_FLAGS]
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload["project"] == "depot"
        assert (tmp_path / "depot.riddle.json").is_file()

    def test_missing_budget_non_interactive_exits_2(self, runner, tmp_path):
        args = ["init", str(tmp_path), "--name", "depot", "--non-interactive",
                "--asset", "a", "--threats", "b", "--losses", "c"]
        result = runner.invoke(main, args)
        assert result.exit_code == 2
        assert "empty_answer" in result.stderr
        assert "prevention_budget" in result.stderr

    def test_reinit_requires_force(self, runner, tmp_path):
        init_project(runner, tmp_path)
        again = runner.invoke(
            main, ["init", str(tmp_path), "--name", "depot", *INIT_FLAGS, "--non-interactive"]
        )
        assert again.exit_code == 2
        assert "--force" in again.stderr
        forced = runner.invoke(
            main,
            ["init", str(tmp_path), "--name", "depot", *INIT_FLAGS,
             "--non-interactive", "--force"],
        )
        assert forced.exit_code == 0

    def test_interactive_prompts_for_missing_answers(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["init", str(tmp_path), "--name", "depot",
             "--asset", "a", "--threats", "b", "--losses", "c"],
            input="prompted budget\n",
        )
        # CliRunner stdin is not a tty, so non-interactive rules apply
        assert result.exit_code == 2


class TestToolAdd:
    def test_trojan_horse_records_cyber_mode(self, runner, tmp_path):
        path = init_project(runner, tmp_path)
        result = invoke(runner, path, [
            "tool", "add", "--name", "persistent backdoor", "--category", "trojan horse",
            "--source", "https://example.test/report",
        ])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload["added"]["mode"] == "cyber"
        assert payload["added"]["id"] == "persistent-backdoor"

    def test_unknown_category_lists_valid_and_exits_2(self, runner, tmp_path):
        path = init_project(runner, tmp_path)
        result = invoke(runner, path, ["tool", "add", "--name", "x", "--category", "баллиста"])
        assert result.exit_code == 2
        assert "unknown_category" in result.stderr
        assert "worm" in result.stderr and "vandalism" in result.stderr

    def test_duplicate_exits_2(self, runner, tmp_path):
        path = init_project(runner, tmp_path)
        invoke(runner, path, ["tool", "add", "--name", "worm X", "--category", "worm"])
        result = invoke(runner, path, ["tool", "add", "--name", "worm X", "--category", "virus"])
        assert result.exit_code == 2
        assert "duplicate_tool" in result.stderr


class TestScore:
    def _with_tool(self, runner, tmp_path, category="worm"):
        path = init_project(runner, tmp_path)
        result = invoke(runner, path, ["tool", "add", "--name", "worm X", "--category", category])
        assert result.exit_code == 0
        return path

    def test_cost_raw_500(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)
        result = invoke(runner, path, ["score", "worm-x", "--variable", "C", "--raw", "500"])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)["scored"]
        assert payload["band"] == "9-10"
        assert payload["score"] == 9

    def test_intrusion_raw_30s(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)
        result = invoke(runner, path, ["score", "worm-x", "--variable", "I", "--raw", "30s"])
        payload = json.loads(result.stdout)["scored"]
        assert payload["band"] == "7-8"

    def test_duration_suffixes(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path, category="vandalism")
        for raw, band in (("90m", "5-6"), ("2h", "5-6"), ("2d", "3-4"), ("2w", "1-2")):
            result = invoke(
                runner, path, ["score", "worm-x", "--variable", "I", "--raw", raw]
            )
            assert json.loads(result.stdout)["scored"]["band"] == band, raw

    def test_percentage_suffix(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)
        result = invoke(runner, path, ["score", "worm-x", "--variable", "Dmg", "--raw", "85%"])
        assert json.loads(result.stdout)["scored"]["band"] == "7-8"

    def test_disruption_uses_tool_mode(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)  # cyber worm
        result = invoke(runner, path, ["score", "worm-x", "--variable", "Dis", "--raw", "2h"])
        assert json.loads(result.stdout)["scored"]["band"] == "3-4"

    def test_qualitative_without_motivation_exits_2(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)
        result = invoke(runner, path, ["score", "worm-x", "--variable", "R", "--band", "5"])
        assert result.exit_code == 2
        assert "qualitative_needs_motivation" in result.stderr

    def test_band_accepts_score_pair_form(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)
        result = invoke(runner, path, [
            "score", "worm-x", "--variable", "L", "--band", "9-10",
            "--motivation", "hardly identifiable in traffic captures",
        ])
        payload = json.loads(result.stdout)["scored"]
        assert payload["band"] == "9-10" and payload["score"] == 9

    def test_explicit_score_outside_band_exits_2(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)
        result = invoke(runner, path, [
            "score", "worm-x", "--variable", "Dmg", "--raw", "95%", "--score", "7",
        ])
        assert result.exit_code == 2
        assert "score_outside_band" in result.stderr

    def test_unparseable_raw_exits_2(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)
        result = invoke(runner, path, ["score", "worm-x", "--variable", "C", "--raw", "cheap"])
        assert result.exit_code == 2
        assert "invalid_measurement" in result.stderr

    def test_unknown_tool_exits_2(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)
        result = invoke(runner, path, ["score", "ghost", "--variable", "C", "--raw", "5"])
        assert result.exit_code == 2
        assert "unknown_tool" in result.stderr

    def test_completion_reports_total(self, runner, tmp_path):
        path = self._with_tool(runner, tmp_path)
        for variable in ("R", "I", "Dmg", "Dis", "L", "E", "C"):
            result = invoke(runner, path, [
                "score", "worm-x", "--variable", variable, "--band", "1",
                "--score", "9", "--motivation", "m",
            ])
            assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)["scored"]
        assert payload["complete"] is True
        assert payload["score_total"] == 63
        assert payload["threat_level"] == "Severe"


def build_scored_project(runner, tmp_path):
    """Two tools: cyber worm scoring 53 (Severe), kinetic IED scoring 33 (Medium)."""
    path = init_project(runner, tmp_path)
    invoke(runner, path, ["tool", "add", "--name", "worm X", "--category", "worm",
                          "--source", "https://example.test/w"])
    invoke(runner, path, ["tool", "add", "--name", "IED", "--category", "explosive attack",
                          "--source", "https://example.test/i"])
    worm_scores = {"R": 9, "I": 9, "Dmg": 9, "Dis": 3, "L": 7, "E": 7, "C": 9}
    ied_scores = {"R": 5, "I": 9, "Dmg": 5, "Dis": 1, "L": 1, "E": 5, "C": 7}
    for tool_key, scores in (("worm-x", worm_scores), ("ied", ied_scores)):
        for variable, value in scores.items():
            band = {9: "1", 7: "2", 5: "3", 3: "4", 1: "5"}[value]
            result = invoke(runner, path, [
                "score", tool_key, "--variable", variable, "--band", band,
                "--score", str(value), "--motivation", f"{variable} judgement",
            ])
            assert result.exit_code == 0, result.output
    return path


class TestMatrixReportValidate:
    def test_matrix_table(self, runner, tmp_path):
        path = build_scored_project(runner, tmp_path)
        result = invoke(runner, path, ["matrix"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].split() == [
            "Tool", "name", "R", "I", "Dmg", "Dis", "L", "E", "C", "Score", "Total",
        ]
        assert "worm X" in lines[2] and "53" in lines[2] and "Severe" in lines[2]
        assert "IED" in lines[3] and "33" in lines[3] and "Medium" in lines[3]

    def test_matrix_csv_header_bit_exact(self, runner, tmp_path):
        path = build_scored_project(runner, tmp_path)
        result = invoke(runner, path, ["matrix", "--format", "csv"])
        lines = result.stdout.splitlines()
        assert lines[0] == CSV_HEADER
        assert lines[1] == "worm X,9,9,9,3,7,7,9,53,Severe"
        assert lines[2] == "IED,5,9,5,1,1,5,7,33,Medium"

    def test_matrix_json_ordering(self, runner, tmp_path):
        path = build_scored_project(runner, tmp_path)
        result = invoke(runner, path, ["matrix", "--format", "json"])
        payload = json.loads(result.stdout)
        assert [row["score_total"] for row in payload["rows"]] == [53, 33]

    def test_matrix_empty_project_exits_2(self, runner, tmp_path):
        path = init_project(runner, tmp_path)
        result = invoke(runner, path, ["matrix"])
        assert result.exit_code == 2
        assert "no_complete_assessments" in result.stderr

    def test_matrix_identical_across_runs(self, runner, tmp_path):
        path = build_scored_project(runner, tmp_path)
        first = invoke(runner, path, ["matrix", "--format", "csv"]).stdout
        second = invoke(runner, path, ["matrix", "--format", "csv"]).stdout
        assert first == second

    def test_report_keeps_duplicate_d_header_and_level_text(self, runner, tmp_path):
        path = build_scored_project(runner, tmp_path)
        result = invoke(runner, path, ["report"])
        assert result.exit_code == 0
        assert "| Tool name | R | I | D | D | L | E | C | Score | Total |" in result.stdout
        assert "serious or irreversible damage" in result.stdout  # Severe text
        assert "medium and repairable damages" in result.stdout  # Medium text
        assert "Which asset do you want to secure?" in result.stdout

    def test_validate_clean_project(self, runner, tmp_path):
        path = build_scored_project(runner, tmp_path)
        result = invoke(runner, path, ["validate"])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload["findings"] == []

    def test_validate_unanswered_questions_exits_2(self, runner, tmp_path):
        from riddlec.assessment import new_project

        path = tmp_path / "raw.riddle.json"
        save_project(new_project("raw"), path)
        result = invoke(runner, str(path), ["validate"])
        assert result.exit_code == 2
        payload = json.loads(result.stdout)
        assert payload["errors"] == 4

    def test_rubrics_dump(self, runner, tmp_path):
        result = runner.invoke(main, ["rubrics"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert len(payload["variables"]) == 7
        assert "withstand all the attempts taken" in result.stdout


class TestProjectResolution:
    def test_env_var(self, runner, tmp_path):
        path = build_scored_project(runner, tmp_path)
        result = runner.invoke(main, ["matrix"], env={"RIDDLE_PROJECT": path})
        assert result.exit_code == 0
        assert "worm X" in result.stdout

    def test_directory_with_single_project(self, runner, tmp_path):
        build_scored_project(runner, tmp_path)
        result = runner.invoke(main, ["--project", str(tmp_path), "matrix"])
        assert result.exit_code == 0

    def test_directory_with_many_projects_exits_2(self, runner, tmp_path):
        init_project(runner, tmp_path, name="one")
        init_project(runner, tmp_path, name="two")
        result = runner.invoke(main, ["--project", str(tmp_path), "matrix"])
        assert result.exit_code == 2
        assert "one.riddle.json" in result.stderr

    def test_missing_project_exits_2(self, runner, tmp_path):
        result = runner.invoke(main, ["--project", str(tmp_path), "matrix"])
        assert result.exit_code == 2

    def test_corrupt_project_exits_1(self, runner, tmp_path):
        path = tmp_path / "bad.riddle.json"
        path.write_text("{not json")
        result = runner.invoke(main, ["--project", str(path), "matrix"])
        assert result.exit_code == 1
        assert "corrupt_document" in result.stderr
