"""Tests for Pareto fronts and the technology sweep."""

import csv

import numpy as np
import pytest

from imcdse.modules.objective import alpha, objective_spec
from imcdse.modules.pareto import (
    EmptyFrontInputError,
    TradePoint,
    dominates,
    pareto_front,
    tech_sweep,
    write_pareto_csv,
)
from imcdse.modules.search import SearchSizes, default_phases
from imcdse.modules.space import DesignPoint
from tests.conftest import make_space


def _point(i, edap, cost, tech_nm=32):
    return TradePoint(design=DesignPoint((i,)), edap=edap, cost=cost, tech_nm=tech_nm)


class TestDominates:
    def test_strictly_better_on_one_axis(self):
        assert dominates(_point(0, 1.0, 1.0), _point(1, 1.0, 2.0))

    def test_equal_points_do_not_dominate(self):
        assert not dominates(_point(0, 1.0, 1.0), _point(1, 1.0, 1.0))

    def test_trade_off(self):
        assert not dominates(_point(0, 1.0, 3.0), _point(1, 2.0, 1.0))

    def test_axes_positive(self):
        with pytest.raises(ValueError, match="positive"):
            _point(0, 0.0, 1.0)


class TestParetoFront:
    def test_hand_picked(self):
        points = [_point(0, 5.0, 1.0), _point(1, 3.0, 2.0), _point(2, 4.0, 3.0), _point(3, 1.0, 4.0)]
        assert [p.design.gene for p in pareto_front(points)] == [(0,), (1,), (3,)]

    def test_matches_brute_force(self):
        rng = np.random.default_rng(42)
        points = [_point(i, float(e), float(c)) for i, (e, c) in enumerate(rng.uniform(0.1, 10.0, size=(200, 2)))]
        expected = {p.design for p in points if not any(dominates(q, p) for q in points)}
        front = pareto_front(points)
        assert {p.design for p in front} == expected

    def test_sorted_by_cost_with_falling_edap(self):
        rng = np.random.default_rng(7)
        points = [_point(i, float(e), float(c)) for i, (e, c) in enumerate(rng.uniform(0.1, 10.0, size=(100, 2)))]
        front = pareto_front(points)
        costs = [p.cost for p in front]
        edaps = [p.edap for p in front]
        assert costs == sorted(costs)
        assert edaps == sorted(edaps, reverse=True)

    def test_duplicates_collapse_to_lowest_gene(self):
        front = pareto_front([_point(4, 1.0, 1.0), _point(2, 1.0, 1.0)])
        assert [p.design.gene for p in front] == [(2,)]

    def test_single_point(self):
        assert pareto_front([_point(0, 2.0, 2.0)]) == [_point(0, 2.0, 2.0)]

    def test_empty(self):
        with pytest.raises(EmptyFrontInputError):
            pareto_front([])


class TestTechSweep:
    @pytest.fixture
    def sweep(self, mlp_workloads, coeffs):
        space = make_space(tech=(7, 32, 90))
        return tech_sweep(
            space,
            mlp_workloads,
            objective_spec("ed-cost"),
            coeffs,
            phases=default_phases(2),
            sizes=SearchSizes(p_h=40, p_e=20, p_ga=8),
            seed=3,
        )

    def test_front_within_points(self, sweep):
        assert sweep.front
        assert {p.design for p in sweep.front} <= {p.design for p in sweep.points}
        assert {p.tech_nm for p in sweep.points} <= {7, 32, 90}

    def test_no_point_dominates_the_front(self, sweep):
        for member in sweep.front:
            assert not any(dominates(p, member) for p in sweep.points)

    def test_cost_matches_objective(self, sweep):
        by_design = {p.design: p for p in sweep.points}
        for design in sweep.run.top_k:
            point = by_design[design.point]
            assert point.cost == pytest.approx(design.score.cost)
            assert point.edap * alpha(point.tech_nm) == pytest.approx(design.score.value)

    def test_points_cover_every_feasible_evaluation(self, sweep):
        assert len(sweep.points) <= sweep.run.eval_count
        assert len({p.design for p in sweep.points}) == len(sweep.points)

    def test_csv(self, sweep, tmp_path):
        path = write_pareto_csv(sweep, tmp_path / "pareto.csv")
        with path.open() as f:
            rows = list(csv.DictReader(f))
        assert list(rows[0])[:3] == ["edap", "cost", "tech_nm"]
        assert list(rows[0])[-1] == "on_front"
        assert len(rows) == len(sweep.points)
        assert sum(int(r["on_front"]) for r in rows) == len(sweep.front)
