"""Shared pytest fixtures for imcdse tests."""

import pytest

from imcdse.modules.evaluator import EvaluationCache, ModelCoefficients
from imcdse.modules.objective import objective_spec
from imcdse.modules.space import ParamDomain, SearchSpace
from imcdse.modules.workload import generate_synthetic
from imcdse.utils.logging import reset_logger

TINY_DOMAINS = {
    "xbar_rows": (64, 128),
    "xbar_cols": (64, 128),
    "c_per_tile": (2, 4),
    "t_per_router": (2,),
    "g_per_chip": (4, 16),
    "v_op": (0.9, 1.0),
    "t_cycle": (1, 5),
    "glb": (256,),
    "bits_cell": (1, 2),
    "tech": (32,),
}


def make_space(mode="weight_stationary", voltage_by_tech=None, **overrides):
    """Build a space over the canonical parameters, replacing some domains."""
    domains = {**TINY_DOMAINS, **overrides}
    return SearchSpace(
        domains=tuple(ParamDomain(name=name, options=options) for name, options in domains.items()),
        voltage_by_tech=voltage_by_tech or {},
        mode=mode,
    )


@pytest.fixture(autouse=True)
def reset_logger_fixture():
    """Reset logger before and after each test."""
    reset_logger()
    yield
    reset_logger()


@pytest.fixture
def tiny_space():
    """128-point weight-stationary space with feasible and infeasible designs."""
    return make_space()


@pytest.fixture
def mlp_workloads():
    """Two small synthetic workloads: 40960 and 32768 weights."""
    return [generate_synthetic("mlp", 2, 0), generate_synthetic("mlp", 1, 1)]


@pytest.fixture
def coeffs():
    return ModelCoefficients()


@pytest.fixture
def edap():
    return objective_spec("edap")


@pytest.fixture
def cache():
    return EvaluationCache()
