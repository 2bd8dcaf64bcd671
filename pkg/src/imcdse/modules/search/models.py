"""Search types: phase schedules, population sizes, pools and run results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from imcdse.modules.evaluator.models import ModelCoefficients
from imcdse.modules.objective.models import JointScore, ObjectiveSpec
from imcdse.modules.space.models import DesignPoint, SearchSpace
from imcdse.modules.workload.models import Workload

Strategy = Literal[
    "joint",
    "plain-ga",
    "plain-ga-sampled",
    "separate",
    "largest",
    "sequential-max",
    "sequential-median",
]
PoolStage = Literal["c1_random", "c2_diverse", "p_ga_elite"]


class GeneLengthMismatchError(ValueError):
    """Raised when comparing design points of different lengths."""


class EmptyReferenceSetError(ValueError):
    """Raised when a distance is taken to an empty set."""


class PoolTooSmallError(ValueError):
    """Raised when a selection asks for more points than the pool holds."""


class SamplingExhaustedError(RuntimeError):
    """Raised when the draw budget runs out before enough feasible designs are found."""


class PhaseConfig(BaseModel):
    """Operator settings of one search phase."""

    model_config = ConfigDict(frozen=True)

    name: str
    p_c: float = Field(ge=0, le=1)
    eta_c: float = Field(gt=0)
    p_m: float = Field(ge=0, le=1)
    eta_m: float = Field(gt=0)
    generations: int = Field(default=10, ge=0)
    per_gene_prob: float | None = Field(default=None, ge=0, le=1)


def default_phases(generations: int = 10) -> tuple[PhaseConfig, ...]:
    """Four-phase schedule: exploration, transition, convergence, finetuning."""
    return (
        PhaseConfig(name="exploration", p_c=1.0, eta_c=3, p_m=1.0, eta_m=3, generations=generations),
        PhaseConfig(name="transition", p_c=0.9, eta_c=7, p_m=0.5, eta_m=7, generations=generations),
        PhaseConfig(name="convergence", p_c=1.0, eta_c=15, p_m=0.2, eta_m=15, generations=generations),
        PhaseConfig(name="finetuning", p_c=1.0, eta_c=25, p_m=0.05, eta_m=25, generations=generations),
    )


def baseline_phase(generations: int) -> PhaseConfig:
    """Single fixed phase of the plain GA: every offspring mutated with per-gene probability 1/n."""
    return PhaseConfig(name="baseline", p_c=0.9, eta_c=15, p_m=1.0, eta_m=20, generations=generations)


class SearchSizes(BaseModel):
    """Population sizes of the sampling pipeline and the GA."""

    model_config = ConfigDict(frozen=True)

    p_h: int = Field(default=1000, ge=1)
    p_e: int = Field(default=500, ge=1)
    p_ga: int = Field(default=40, ge=2)

    @model_validator(mode="after")
    def validate_order(self) -> SearchSizes:
        """Each stage keeps a subset of the previous one."""
        if not self.p_ga <= self.p_e <= self.p_h:
            msg = f"sizes must satisfy p_ga <= p_e <= p_h (got {self.p_ga}, {self.p_e}, {self.p_h})"
            raise ValueError(msg)
        return self


@dataclass(frozen=True)
class CandidatePool:
    """Design points at one stage of initial sampling."""

    points: tuple[DesignPoint, ...]
    stage: PoolStage


@dataclass(frozen=True)
class ScoredDesign:
    """A design point with its decoded parameters and joint score."""

    point: DesignPoint
    params: dict[str, float]
    score: JointScore


@dataclass(frozen=True)
class GenerationStats:
    """One row of the convergence history."""

    generation: int
    phase: str
    best_score: float
    mean_score: float
    evals: int


@dataclass(frozen=True)
class Timing:
    """Wall-time split of a run in seconds."""

    sampling_s: float = 0.0
    search_s: float = 0.0

    @property
    def total_s(self) -> float:
        """Sampling plus search time."""
        return self.sampling_s + self.search_s


class RunSnapshot(BaseModel):
    """Everything needed to re-run a search."""

    model_config = ConfigDict(frozen=True)

    strategy: Strategy
    seed: int
    space: SearchSpace
    workloads: tuple[Workload, ...]
    objective: ObjectiveSpec
    coefficients: ModelCoefficients
    phases: tuple[PhaseConfig, ...]
    sizes: SearchSizes
    patience: int | None = None
    target: str | None = None


@dataclass
class RunResult:
    """Outcome of one search run."""

    snapshot: RunSnapshot
    best: ScoredDesign
    top_k: list[ScoredDesign]
    history: list[GenerationStats]
    eval_count: int
    sampling_evals: int
    target_workloads: list[str]
    timing: Timing = field(default_factory=Timing)
    draws: int = 0

    @property
    def search_evals(self) -> int:
        """Evaluations spent after initial sampling."""
        return self.eval_count - self.sampling_evals
