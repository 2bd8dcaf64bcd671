"""Evaluator types: model coefficients and per-workload hardware metrics."""

from __future__ import annotations

from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field


class InfeasibleMappingError(RuntimeError):
    """Raised when a workload's weights don't fit a weight-stationary design."""


class ZeroWorkloadError(ValueError):
    """Raised when a workload performs no computation."""


class CoefficientsError(ValueError):
    """Raised when a coefficient file is invalid."""


class ModelCoefficients(BaseModel):
    """Constants of the analytical energy/latency/area model.

    Energies and areas are given at V_ref and 32 nm; energy scales linearly
    and area quadratically with the feature size.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    a_cell_um2: float = Field(default=0.1, gt=0)
    a_adc_mm2: float = Field(default=0.005, gt=0)
    a_periph_mm2: float = Field(default=0.02, gt=0)
    a_router_mm2: float = Field(default=0.5, gt=0)
    a_glb_mm2_per_mib: float = Field(default=1.0, gt=0)
    e_cell_pj: float = Field(default=0.25, gt=0)
    e_adc_pj: float = Field(default=1.0, gt=0)
    e_buf_pj_per_byte: float = Field(default=0.1, gt=0)
    e_router_pj_per_byte: float = Field(default=0.2, gt=0)
    e_dram_pj_per_byte: float = Field(default=32.0, gt=0)
    dram_gbps: float = Field(default=25.6, gt=0)
    t_min_ns: float = Field(default=1.0, gt=0)
    v_ref: float = Field(default=1.0, gt=0)
    e_digital_pj_per_mac: float = Field(default=0.5, gt=0)
    digital_gmacs: float = Field(default=100.0, gt=0)
    swap_round_overhead_ns: float = Field(default=1000.0, ge=0)
    act_bits: int = Field(default=8, gt=0)

    @classmethod
    def from_json(cls, content: str) -> ModelCoefficients:
        """Parse coefficients from JSON; omitted fields keep their defaults.

        Raises:
            CoefficientsError: If the JSON is invalid or a value is out of range
        """
        try:
            return cls.model_validate_json(content)
        except ValueError as e:
            msg = f"Invalid coefficients: {e}"
            raise CoefficientsError(msg) from e


@dataclass(frozen=True)
class HwMetrics:
    """Energy, latency and area of one design running one workload."""

    energy_mj: float
    latency_ms: float
    area_mm2: float

    @property
    def edap(self) -> float:
        """Energy-delay-area product in mJ·ms·mm²."""
        return self.energy_mj * self.latency_ms * self.area_mm2
