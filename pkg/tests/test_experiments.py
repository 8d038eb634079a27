"""Sweeps, the four standard panels, and the differentiation analysis."""

import io
import random
from fractions import Fraction as F

import pytest

from contrip import (
    DEFAULT_GRID_REFERENCE,
    DomainError,
    PrecisionError,
    SweepSpec,
    Weights,
    compute_raw_exact,
    default_panel_specs,
    differentiation_report,
    emit_sweep_csv,
    run_sweep,
)


def spec(mode="vary-rating", fixed=(0,), grid=(2, 5), **kwargs):
    return SweepSpec(mode=mode, fixed_values=tuple(fixed), grid=tuple(grid), **kwargs)


class TestSweepSpec:
    def test_normalizes_to_fractions(self):
        s = spec(grid=("1.5", 2), fixed=("0.2",))
        assert s.grid == (F(3, 2), F(2))
        assert s.fixed_values == (F(1, 5),)

    def test_rejects_bad_mode(self):
        with pytest.raises(DomainError, match="mode"):
            spec(mode="vary-everything")

    def test_rejects_unsorted_grid(self):
        with pytest.raises(DomainError, match="strictly increasing"):
            spec(grid=(2, 2))
        with pytest.raises(DomainError, match="strictly increasing"):
            spec(grid=(3, 2))

    def test_rejects_empty_axes(self):
        with pytest.raises(DomainError, match="grid"):
            spec(grid=())
        with pytest.raises(DomainError, match="fixed_values"):
            spec(fixed=())

    def test_domain_checks_name_the_entry(self):
        with pytest.raises(DomainError, match=r"grid\[1\]"):
            spec(grid=(2, 6))
        with pytest.raises(DomainError, match=r"fixed_values\[0\]"):
            spec(fixed=(2,), grid=(2, 5))  # consensus axis takes [0, 1]


class TestRunSweep:
    def test_vary_consensus_spot_raws(self):
        rows = run_sweep(spec(mode="vary-consensus", fixed=(4,), grid=(0, "0.5", 1)))
        assert [r.raw for r in rows] == [F(167, 50), F(379, 100), F(106, 25)]
        assert all(r.scaled is None for r in rows)

    def test_vary_rating_spot_raws(self):
        rows = run_sweep(spec(mode="vary-rating", fixed=(0,), grid=(2, 5)))
        assert [r.raw for r in rows] == [F(38, 25), F(17, 4)]

    def test_scaled_ceiling(self):
        rows = run_sweep(spec(mode="vary-consensus", fixed=(5,), grid=(1,), scaling=True))
        assert [r.scaled for r in rows] == [F(5)]

    def test_ordering_fixed_outer_grid_inner(self):
        rows = run_sweep(spec(mode="vary-rating", fixed=(0, 1), grid=(1, 2)))
        assert [(r.x, r.y) for r in rows] == [(1, 0), (2, 0), (1, 1), (2, 1)]

    def test_rows_match_fresh_evaluations(self):
        sweep_spec = spec(mode="vary-consensus", fixed=(1, "2.5"), grid=(0, "0.2", "0.9"))
        for row in run_sweep(sweep_spec):
            fresh = compute_raw_exact(row.x, row.y)
            assert (row.term1, row.term2, row.term3, row.raw) == (
                fresh.term1,
                fresh.term2,
                fresh.term3,
                fresh.raw,
            )

    def test_bit_identical_across_runs(self):
        sweep_spec = default_panel_specs()["C"]
        assert run_sweep(sweep_spec) == run_sweep(sweep_spec)

    def test_monotone_within_fixed_rating_series(self):
        for sweep_spec in (default_panel_specs()["B"], default_panel_specs()["D"]):
            rows = run_sweep(sweep_spec)
            per_series = len(sweep_spec.grid)
            for start in range(0, len(rows), per_series):
                series = rows[start : start + per_series]
                assert all(a.raw < b.raw for a, b in zip(series, series[1:]))


class TestDefaultPanels:
    def test_panel_shapes(self):
        panels = default_panel_specs()
        assert set(panels) == {"A", "B", "C", "D"}
        for key in ("A", "C"):
            assert panels[key].mode == "vary-rating"
            assert len(panels[key].grid) == 41
            assert panels[key].grid[0] == 1 and panels[key].grid[-1] == 5
            assert panels[key].fixed_values == (0, F(1, 5), F(2, 5), F(3, 5), F(4, 5), 1)
        for key in ("B", "D"):
            assert panels[key].mode == "vary-consensus"
            assert len(panels[key].grid) == 50
            assert panels[key].grid[0] == 0 and panels[key].grid[-1] == 1
            assert panels[key].fixed_values == (1, 2, 3, 4, 5)
        assert (panels["A"].scaling, panels["B"].scaling) == (False, False)
        assert (panels["C"].scaling, panels["D"].scaling) == (True, True)
        assert [panels[k].label for k in "ABCD"] == ["A", "B", "C", "D"]

    def test_panel_a_pair_count(self):
        a = default_panel_specs()["A"]
        assert len(a.grid) * len(a.fixed_values) == 246


def _oracle_distinct(rows) -> int:
    # naive independent count: floor + half-up on the scaled remainder
    seen = set()
    for row in rows:
        scaled = row.raw * 1000
        floor = scaled.numerator // scaled.denominator
        seen.add(floor + (1 if 2 * (scaled - floor) >= 1 else 0))
    return len(seen)


class TestDifferentiation:
    def test_default_grid_counts(self):
        report = differentiation_report(default_panel_specs()["A"])
        assert report.n_pairs == 246
        assert report.n_distinct == 235
        assert report.percent == pytest.approx(100 * 235 / 246)
        assert report.reference == DEFAULT_GRID_REFERENCE
        assert report.reference.n_distinct == 240

    def test_default_grid_collision_structure(self):
        report = differentiation_report(default_panel_specs()["A"])
        assert len(report.collisions) == 11
        assert all(len(group.members) == 2 for group in report.collisions)
        assert sum(len(g.members) - 1 for g in report.collisions) == report.n_pairs - report.n_distinct
        raws = [g.raw for g in report.collisions]
        assert raws == sorted(raws)

    def test_known_collision_group_present(self):
        report = differentiation_report(default_panel_specs()["A"])
        (group,) = [g for g in report.collisions if g.raw == F(3613, 1000)]
        assert set(group.members) == {(F(43, 10), F(0)), (F(41, 10), F(1, 5))}

    def test_known_collision_in_isolation(self):
        report = differentiation_report(
            spec(mode="vary-rating", fixed=(0, "0.2"), grid=("4.1", "4.3"))
        )
        assert report.n_pairs == 4
        assert report.n_distinct == 3
        (group,) = report.collisions
        assert group.raw == F(3613, 1000)

    def test_single_pair_grid(self):
        report = differentiation_report(spec(mode="vary-rating", fixed=(0,), grid=(3,)))
        assert (report.n_pairs, report.n_distinct) == (1, 1)
        assert report.percent == 100
        assert report.collisions == ()
        assert report.reference is None

    def test_non_thousandths_grid_rejected(self):
        with pytest.raises(PrecisionError, match="0.001"):
            differentiation_report(default_panel_specs()["B"])
        with pytest.raises(PrecisionError, match=r"grid\[0\]"):
            differentiation_report(spec(mode="vary-rating", fixed=(0,), grid=(F(10, 7),)))

    def test_custom_weights_detach_the_reference(self):
        tweaked = SweepSpec(
            mode="vary-rating",
            fixed_values=default_panel_specs()["A"].fixed_values,
            grid=default_panel_specs()["A"].grid,
            weights=Weights(alpha="0.4"),
        )
        assert differentiation_report(tweaked).reference is None

    def test_matches_brute_force_oracle_on_default_grid(self):
        panel_a = default_panel_specs()["A"]
        assert differentiation_report(panel_a).n_distinct == _oracle_distinct(run_sweep(panel_a))

    def test_matches_brute_force_oracle_on_random_grids(self):
        rng = random.Random(46014)
        for _ in range(10):
            grid = tuple(
                F(v, 1000) for v in sorted(rng.sample(range(1000, 5001), rng.randint(2, 25)))
            )
            fixed = tuple(
                F(v, 1000) for v in sorted(rng.sample(range(0, 1001), rng.randint(1, 6)))
            )
            sweep_spec = spec(mode="vary-rating", fixed=fixed, grid=grid)
            assert differentiation_report(sweep_spec).n_distinct == _oracle_distinct(
                run_sweep(sweep_spec)
            )

    def test_scaling_invariance_of_collisions(self):
        # grouping by exact scaled value reproduces the raw-value groups
        report = differentiation_report(default_panel_specs()["A"])
        scaled_groups: dict[F, list] = {}
        for row in run_sweep(default_panel_specs()["C"]):
            scaled_groups.setdefault(row.scaled, []).append((row.x, row.y))
        scaled_collisions = sorted(
            (tuple(members) for members in scaled_groups.values() if len(members) > 1),
        )
        raw_collisions = sorted(group.members for group in report.collisions)
        assert scaled_collisions == raw_collisions
        assert len(scaled_groups) == report.n_distinct


class TestEmitSweepCsv:
    def test_row_count_and_line_count(self, tmp_path):
        rows = run_sweep(default_panel_specs()["A"])
        out = tmp_path / "a.csv"
        assert emit_sweep_csv(rows, out, label="A") == 246
        lines = out.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 247
        assert lines[0] == "panel,x,y,term1,term2,term3,raw,scaled"
        assert lines[1] == "A,1.000,0.000,0.750,0.100,0.040,0.610,"

    def test_empty_input_writes_header_only(self, tmp_path):
        out = tmp_path / "empty.csv"
        assert emit_sweep_csv([], out) == 0
        assert out.read_text(encoding="utf-8") == "panel,x,y,term1,term2,term3,raw,scaled\n"

    def test_scaled_column_filled_when_scaling(self):
        buffer = io.StringIO()
        emit_sweep_csv(run_sweep(default_panel_specs()["C"])[:1], buffer, label="C")
        assert buffer.getvalue().splitlines()[1] == "C,1.000,0.000,0.750,0.100,0.040,0.610,1.000"

    def test_byte_identical_across_runs(self):
        sweep_spec = default_panel_specs()["D"]
        first, second = io.StringIO(), io.StringIO()
        emit_sweep_csv(run_sweep(sweep_spec), first, label="D")
        emit_sweep_csv(run_sweep(sweep_spec), second, label="D")
        assert first.getvalue() == second.getvalue()
        assert first.getvalue().count("\r") == 0
