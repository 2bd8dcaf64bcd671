"""Tests for aggregation, joint scoring, objectives, accuracy and the cost model."""

import math

import pytest
from pydantic import TypeAdapter, ValidationError

from imcdse.modules.evaluator import HwMetrics
from imcdse.modules.objective import (
    TECH_NODES,
    AccuracyProvider,
    ConstantAccuracy,
    EmptyAggregationError,
    ObjectiveConfigError,
    ObjectiveSpec,
    TableAccuracy,
    UnknownTechNodeError,
    aggregate,
    alpha,
    cost,
    infeasible_score,
    joint_score,
    objective_spec,
    recompute_alpha,
    score_key,
    score_unit,
)

# Relative agreement between the tabulated cost factors and the die-yield recomputation.
ALPHA_TOLERANCE = 0.05
# The 7 nm table entry assumes a lower yield than the defect-density model gives; it sits about 8.6% off.
ALPHA_TOLERANCE_7NM = 0.10

PAIR = (
    HwMetrics(energy_mj=2.0, latency_ms=1.0, area_mm2=10.0),
    HwMetrics(energy_mj=4.0, latency_ms=3.0, area_mm2=10.0),
)


class TestAggregate:
    def test_schemes(self):
        assert aggregate([2.0, 4.0], "max") == 4.0
        assert aggregate([2.0, 4.0], "all") == 8.0
        assert aggregate([2.0, 4.0], "mean") == 3.0

    def test_single_value_identity(self):
        for scheme in ("max", "all", "mean"):
            assert aggregate([5.0], scheme) == 5.0

    def test_order_independent(self):
        values = [0.1, 1e-7, 3.3, 42.0, 0.7]
        for scheme in ("max", "all", "mean"):
            assert aggregate(values, scheme) == aggregate(list(reversed(values)), scheme)

    def test_empty(self):
        with pytest.raises(EmptyAggregationError):
            aggregate([], "max")


class TestJointScore:
    @pytest.mark.parametrize(("scheme", "expected"), [("max", 120.0), ("mean", 60.0), ("all", 240.0)])
    def test_edap(self, scheme, expected):
        score = joint_score(PAIR, 10.0, objective_spec("edap", scheme))
        assert score.value == pytest.approx(expected)
        assert score.feasible

    def test_max_dominates_mean(self):
        by_max = joint_score(PAIR, 10.0, objective_spec("edap", "max")).value
        by_mean = joint_score(PAIR, 10.0, objective_spec("edap", "mean")).value
        assert by_max >= by_mean

    def test_area_constraint(self):
        spec = objective_spec("edap", a_constr_mm2=5.0)
        score = joint_score(PAIR, 10.0, spec)
        assert not score.feasible
        assert "exceeds" in score.reason

    def test_edp_ignores_area(self):
        assert joint_score(PAIR, 10.0, objective_spec("edp")).value == pytest.approx(12.0)

    def test_ed_cost(self):
        score = joint_score(PAIR, 10.0, objective_spec("ed-cost"), tech_nm=7)
        assert score.cost == pytest.approx(38.71)
        assert score.value == pytest.approx(12.0 * 38.71)

    def test_cost_only_reported_for_cost_objectives(self):
        assert joint_score(PAIR, 10.0, objective_spec("edap")).cost is None

    def test_accuracy_divides(self):
        plain = joint_score(PAIR, 10.0, objective_spec("edap")).value
        scaled = joint_score(PAIR, 10.0, objective_spec("edap"), accuracies=[0.5, 0.8]).value
        assert scaled == pytest.approx(plain / 0.4)

    def test_infeasible_score(self):
        score = infeasible_score(3.0, "does not fit")
        assert math.isinf(score.value)
        assert not score.feasible


class TestScoreKey:
    def test_feasible_first_then_value_then_gene(self):
        good = joint_score(PAIR, 10.0, objective_spec("edap"))
        worse = joint_score(PAIR, 20.0, objective_spec("edap"))
        bad = infeasible_score(1.0, "x")
        keys = sorted(
            [score_key(bad, (0,)), score_key(worse, (1,)), score_key(good, (3,)), score_key(good, (2,))]
        )
        assert [k[2] for k in keys] == [(2,), (3,), (1,), (0,)]


class TestObjectiveSpec:
    def test_presets(self):
        assert objective_spec("edap").terms == ("energy", "latency", "area")
        assert objective_spec("ED-COST").terms == ("energy", "latency", "cost")

    def test_terms_canonical_order(self):
        assert ObjectiveSpec(terms=("area", "energy", "area")).terms == ("energy", "area")

    def test_area_and_cost_exclusive(self):
        with pytest.raises(ValidationError, match="either"):
            ObjectiveSpec(terms=("area", "cost"))

    def test_empty_terms(self):
        with pytest.raises(ValidationError):
            ObjectiveSpec(terms=())

    def test_unknown_objective(self):
        with pytest.raises(ObjectiveConfigError, match="Unknown objective"):
            objective_spec("throughput")

    def test_unknown_aggregation(self):
        with pytest.raises(ObjectiveConfigError):
            objective_spec("edap", "median")

    def test_units(self):
        assert score_unit(objective_spec("edap")) == "mJ·ms·mm²"
        assert score_unit(objective_spec("edp", "all"), 3) == "mJ^3·ms^3"
        assert score_unit(objective_spec("ed-cost")) == "mJ·ms·cost"


class TestAccuracy:
    def test_constant(self):
        assert ConstantAccuracy(value=0.9).accuracy("vgg16", 2) == 0.9

    def test_table_lookup_order(self):
        table = TableAccuracy(
            accuracies={"vgg16": 0.7},
            per_bits_cell={4: {"vgg16": 0.5}},
            default=0.95,
        )
        assert table.accuracy("vgg16", 4) == 0.5
        assert table.accuracy("vgg16", 1) == 0.7
        assert table.accuracy("resnet18", 4) == 0.95

    def test_discriminated_union(self):
        provider = TypeAdapter(AccuracyProvider).validate_python({"kind": "table", "accuracies": {"vit": 0.8}})
        assert isinstance(provider, TableAccuracy)

    def test_out_of_range(self):
        with pytest.raises(ValidationError):
            ConstantAccuracy(value=1.5)


class TestCost:
    def test_reference_node(self):
        assert cost(100.0, 32) == pytest.approx(100.0)

    def test_seven_nm(self):
        assert cost(100.0, 7) == pytest.approx(387.1)

    def test_alpha_decreases_with_feature_size(self):
        nodes = sorted(TECH_NODES)
        alphas = [alpha(nm) for nm in nodes]
        assert alphas == sorted(alphas, reverse=True)

    def test_unknown_node(self):
        with pytest.raises(UnknownTechNodeError, match="known"):
            alpha(28)

    def test_recomputed_alpha_at_90nm(self):
        assert recompute_alpha(90) == pytest.approx(0.408, abs=0.001)

    def test_reference_recomputes_to_one(self):
        assert recompute_alpha(32) == pytest.approx(1.0)

    @pytest.mark.parametrize("nm", sorted(TECH_NODES))
    def test_recomputed_alpha_close_to_table(self, nm):
        """Every node agrees within ALPHA_TOLERANCE except 7 nm, which gets ALPHA_TOLERANCE_7NM."""
        tolerance = ALPHA_TOLERANCE_7NM if nm == 7 else ALPHA_TOLERANCE
        assert recompute_alpha(nm) == pytest.approx(alpha(nm), rel=tolerance)
