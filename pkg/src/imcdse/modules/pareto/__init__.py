"""Pareto analysis of EDAP against fabrication cost."""

from imcdse.modules.pareto.service import (
    TECH_SWEEP_SIZES,
    EmptyFrontInputError,
    TechSweepResult,
    TradePoint,
    dominates,
    pareto_front,
    tech_sweep,
    trade_points,
    write_pareto_csv,
)

__all__ = [
    "TECH_SWEEP_SIZES",
    "EmptyFrontInputError",
    "TechSweepResult",
    "TradePoint",
    "dominates",
    "pareto_front",
    "tech_sweep",
    "trade_points",
    "write_pareto_csv",
]
