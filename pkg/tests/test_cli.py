"""CLI surface: subcommands, exit codes, formats, config precedence."""

import json

import pytest
from click.testing import CliRunner

from contrip.cli import main

GOOD_REVIEWS = "item_id,rating,polarity\nA,4,0.9\nA,5,0.9\n"


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, env=None):
    return runner.invoke(main, list(args), env=env, catch_exceptions=False)


class TestScore:
    def test_raw_line_without_scaling(self, runner):
        result = invoke(runner, "score", "--rating", "4", "--consensus", "1", "--no-scale")
        assert result.exit_code == 0
        assert "raw    4.240" in result.stdout
        assert "scaled" not in result.stdout

    def test_explicit_default_weights(self, runner):
        result = invoke(
            runner, "score", "--rating", "4", "--consensus", "0",
            "--alpha", "0.5", "--beta", "10", "--delta", "100", "--no-scale",
        )
        assert result.exit_code == 0
        assert "3.340" in result.stdout

    def test_scaled_line_present_by_default(self, runner):
        result = invoke(runner, "score", "--rating", "4", "--consensus", "0")
        assert result.exit_code == 0
        assert "raw    3.340" in result.stdout
        assert "scaled 3.487" in result.stdout

    def test_domain_error_exits_3_naming_range(self, runner):
        result = invoke(runner, "score", "--rating", "6", "--consensus", "0.5")
        assert result.exit_code == 3
        assert "[1, 5]" in result.stderr
        assert result.stdout == ""

    def test_unparseable_flag_is_usage_error(self, runner):
        result = invoke(runner, "score", "--rating", "abc", "--consensus", "0.5")
        assert result.exit_code == 2

    def test_non_finite_flag_is_usage_error(self, runner):
        result = invoke(runner, "score", "--rating", "nan", "--consensus", "0.5")
        assert result.exit_code == 2

    def test_csv_format(self, runner):
        result = invoke(
            runner, "score", "--rating", "4", "--consensus", "1", "--no-scale", "--format", "csv"
        )
        lines = result.stdout.splitlines()
        assert lines[0] == "x,y,term1,term2,term3,raw,scaled"
        assert lines[1] == "4.000,1.000,4.250,0.000,0.010,4.240,"

    def test_json_format(self, runner):
        result = invoke(
            runner, "score", "--rating", "4", "--consensus", "1", "--format", "json"
        )
        payload = json.loads(result.stdout)
        assert payload["raw"] == 4.24
        assert payload["term1"] == 4.25
        assert payload["scaled"] == 4.308

    def test_outputs_are_deterministic(self, runner):
        args = ("score", "--rating", "3.7", "--consensus", "0.41", "--format", "json")
        assert invoke(runner, *args).stdout == invoke(runner, *args).stdout


class TestConfigResolution:
    def test_config_file_applies(self, runner, tmp_path):
        conf = tmp_path / "contrip.conf"
        conf.write_text("alpha = 0\nscaling = off\n", encoding="utf-8")
        result = invoke(
            runner, "--config", str(conf), "score", "--rating", "4", "--consensus", "1"
        )
        assert result.exit_code == 0
        # alpha 0: term1 = 4, raw = 4 - 0 - 0.01
        assert "raw    3.990" in result.stdout
        assert "scaled" not in result.stdout

    def test_flags_beat_config_file(self, runner, tmp_path):
        conf = tmp_path / "contrip.conf"
        conf.write_text("alpha = 0\n", encoding="utf-8")
        result = invoke(
            runner, "--config", str(conf), "score",
            "--rating", "4", "--consensus", "1", "--alpha", "0.5", "--no-scale",
        )
        assert "raw    4.240" in result.stdout

    def test_env_var_points_at_config(self, runner, tmp_path):
        conf = tmp_path / "contrip.conf"
        conf.write_text("alpha = 0\nscaling = off\n", encoding="utf-8")
        result = invoke(
            runner, "score", "--rating", "4", "--consensus", "1",
            env={"CONTRIP_CONFIG": str(conf)},
        )
        assert "raw    3.990" in result.stdout

    def test_unknown_key_is_usage_error(self, runner, tmp_path):
        conf = tmp_path / "contrip.conf"
        conf.write_text("alhpa = 0.5\n", encoding="utf-8")
        result = invoke(
            runner, "--config", str(conf), "score", "--rating", "4", "--consensus", "1"
        )
        assert result.exit_code == 2
        assert "unknown key" in result.stderr

    def test_missing_config_file_is_io_error(self, runner, tmp_path):
        result = invoke(
            runner, "--config", str(tmp_path / "absent.conf"),
            "score", "--rating", "4", "--consensus", "1",
        )
        assert result.exit_code == 4


class TestIngest:
    def test_two_review_example(self, runner, tmp_path):
        path = tmp_path / "reviews.csv"
        path.write_text(GOOD_REVIEWS, encoding="utf-8")
        result = invoke(runner, "ingest", str(path), "--format", "csv")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "item_id,n_reviews,x,y,raw,scaled"
        assert lines[1] == "A,2,4.500,1.000,4.745,4.768"

    def test_header_only_file(self, runner, tmp_path):
        path = tmp_path / "reviews.csv"
        path.write_text("item_id,rating,polarity\n", encoding="utf-8")
        result = invoke(runner, "ingest", str(path), "--format", "csv")
        assert result.exit_code == 0
        assert result.stdout.splitlines() == ["item_id,n_reviews,x,y,raw,scaled"]

    def test_strict_mode_aborts_naming_line(self, runner, tmp_path):
        path = tmp_path / "reviews.csv"
        path.write_text("item_id,rating,polarity\nA,4,0.9\nB,5,1.3\n", encoding="utf-8")
        result = invoke(runner, "ingest", str(path))
        assert result.exit_code == 3
        assert "line 3" in result.stderr

    def test_lenient_mode_reports_skip_count_on_stderr(self, runner, tmp_path):
        path = tmp_path / "reviews.csv"
        path.write_text("item_id,rating,polarity\nA,4,0.9\nB,5,1.3\n", encoding="utf-8")
        result = invoke(runner, "ingest", str(path), "--lenient", "--format", "csv")
        assert result.exit_code == 0
        assert "skipped 1" in result.stderr
        assert "B" not in result.stdout

    def test_missing_file_is_io_error(self, runner, tmp_path):
        result = invoke(runner, "ingest", str(tmp_path / "absent.csv"))
        assert result.exit_code == 4

    def test_json_format(self, runner, tmp_path):
        path = tmp_path / "reviews.csv"
        path.write_text(GOOD_REVIEWS, encoding="utf-8")
        result = invoke(runner, "ingest", str(path), "--format", "json", "--no-scale")
        payload = json.loads(result.stdout)
        assert payload == [
            {"item_id": "A", "n_reviews": 2, "x": 4.5, "y": 1.0, "raw": 4.745, "scaled": None}
        ]

    def test_deterministic_item_order(self, runner, tmp_path):
        path = tmp_path / "reviews.csv"
        path.write_text(
            "item_id,rating,polarity\nzeta,4,0.9\nAlpha,5,0.9\nzeta,2,0.1\n", encoding="utf-8"
        )
        result = invoke(runner, "ingest", str(path), "--format", "csv")
        ids = [line.split(",")[0] for line in result.stdout.splitlines()[1:]]
        assert ids == ["Alpha", "zeta"]


class TestSweep:
    def test_panel_a_row_count(self, runner, tmp_path):
        out = tmp_path / "a.csv"
        result = invoke(runner, "sweep", "--panel", "A", "--out", str(out))
        assert result.exit_code == 0
        assert "246" in result.stdout
        assert len(out.read_text(encoding="utf-8").splitlines()) == 247

    def test_panel_b_row_count(self, runner, tmp_path):
        out = tmp_path / "b.csv"
        invoke(runner, "sweep", "--panel", "B", "--out", str(out))
        assert len(out.read_text(encoding="utf-8").splitlines()) == 251

    def test_byte_identical_across_runs(self, runner, tmp_path):
        first, second = tmp_path / "c1.csv", tmp_path / "c2.csv"
        invoke(runner, "sweep", "--panel", "C", "--out", str(first))
        invoke(runner, "sweep", "--panel", "C", "--out", str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_custom_sweep(self, runner, tmp_path):
        out = tmp_path / "custom.csv"
        result = invoke(
            runner, "sweep", "--vary", "consensus", "--fixed", "4",
            "--grid", "0,0.5,1", "--no-scale", "--out", str(out),
        )
        assert result.exit_code == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert [line.split(",")[6] for line in lines[1:]] == ["3.340", "3.790", "4.240"]
        assert lines[1].startswith("custom,")

    def test_panel_conflicts_with_custom_flags(self, runner, tmp_path):
        result = invoke(
            runner, "sweep", "--panel", "A", "--vary", "rating",
            "--out", str(tmp_path / "x.csv"),
        )
        assert result.exit_code == 2

    def test_panel_conflicts_with_scale_flag(self, runner, tmp_path):
        result = invoke(
            runner, "sweep", "--panel", "A", "--no-scale", "--out", str(tmp_path / "x.csv")
        )
        assert result.exit_code == 2

    def test_unwritable_destination_is_io_error(self, runner):
        result = invoke(runner, "sweep", "--panel", "A", "--out", "/nonexistent/dir/a.csv")
        assert result.exit_code == 4

    def test_out_is_required(self, runner):
        result = invoke(runner, "sweep", "--panel", "A")
        assert result.exit_code == 2

    def test_domain_error_in_custom_grid(self, runner, tmp_path):
        result = invoke(
            runner, "sweep", "--vary", "rating", "--fixed", "0", "--grid", "2,9",
            "--out", str(tmp_path / "x.csv"),
        )
        assert result.exit_code == 3
        assert "grid[1]" in result.stderr


class TestDifferentiate:
    def test_default_run_documents_both_counts(self, runner):
        result = invoke(runner, "differentiate")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "246 pairs, 235 distinct, 95.5%"
        assert "240" in lines[1] and "97.6" in lines[1]
        assert "  raw 3.613: (4.300, 0.000), (4.100, 0.200)" in result.stdout

    def test_single_pair_grid(self, runner):
        result = invoke(
            runner, "differentiate", "--vary", "rating", "--fixed", "0", "--grid", "3"
        )
        assert result.stdout.splitlines()[0] == "1 pairs, 1 distinct, 100.0%"

    def test_non_thousandths_grid_suggests_exact_grid(self, runner):
        result = invoke(
            runner, "differentiate", "--vary", "consensus", "--fixed", "4",
            "--grid", "0,0.0001,1",
        )
        assert result.exit_code == 3
        assert "0.001" in result.stderr

    def test_csv_format(self, runner):
        result = invoke(runner, "differentiate", "--format", "csv")
        lines = result.stdout.splitlines()
        assert lines[0] == "n_pairs,n_distinct,percent,group,raw,x,y"
        assert lines[1] == "246,235,95.5,1,1.288,1.600,0.200"
        assert len(lines) == 1 + 22  # 11 groups of 2 members

    def test_json_format(self, runner):
        result = invoke(runner, "differentiate", "--format", "json")
        payload = json.loads(result.stdout)
        assert payload["n_pairs"] == 246
        assert payload["n_distinct"] == 235
        assert payload["percent"] == 95.5
        assert payload["reference"] == {"n_pairs": 246, "n_distinct": 240, "percent": 97.6}
        raws = [group["raw"] for group in payload["collisions"]]
        assert 3.613 in raws

    def test_incomplete_custom_flags_are_usage_error(self, runner):
        result = invoke(runner, "differentiate", "--vary", "rating")
        assert result.exit_code == 2
