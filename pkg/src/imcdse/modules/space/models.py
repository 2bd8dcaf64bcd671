"""Search-space types: parameter domains, design points and decoded hardware.

A design point is a vector of option indices, one per domain. Decoding maps
the indices onto physical values and produces a HardwareConfig.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import pairwise
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Mode = Literal["weight_stationary", "weight_swapping"]

# Decoding needs every one of these, in any order.
PARAMETER_NAMES: tuple[str, ...] = (
    "xbar_rows",
    "xbar_cols",
    "c_per_tile",
    "t_per_router",
    "g_per_chip",
    "v_op",
    "t_cycle",
    "glb",
    "bits_cell",
    "tech",
)

MAX_CELLS = 2**63 - 1


class SpaceConfigError(ValueError):
    """Raised when a search-space definition is invalid."""


class IndexOutOfDomainError(IndexError):
    """Raised when a gene index lies outside its domain."""


class CapacityOverflowError(ArithmeticError):
    """Raised when a cell-capacity product exceeds the 64-bit range."""


class ParamDomain(BaseModel):
    """One discrete hardware parameter and its ordered options."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(min_length=1)
    options: tuple[float, ...]

    @field_validator("options", mode="after")
    @classmethod
    def validate_options(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """Options must be non-empty, positive and strictly ascending."""
        if not v:
            msg = "options must not be empty"
            raise ValueError(msg)
        if any(option <= 0 for option in v):
            msg = "options must be positive"
            raise ValueError(msg)
        if any(b <= a for a, b in pairwise(v)):
            msg = "options must be strictly ascending"
            raise ValueError(msg)
        return v

    @property
    def size(self) -> int:
        """Number of options."""
        return len(self.options)


class SearchSpace(BaseModel):
    """Ordered parameter domains plus the voltage/technology coupling.

    Supports JSON serialization via from_json() and to_json().
    """

    model_config = ConfigDict(frozen=True)

    domains: tuple[ParamDomain, ...]
    voltage_by_tech: dict[int, tuple[float, ...]] = Field(default_factory=dict)
    mode: Mode = "weight_stationary"

    @model_validator(mode="after")
    def validate_space(self) -> SearchSpace:
        """Check name uniqueness, voltage coverage and the SRAM bits rule."""
        names = [d.name for d in self.domains]
        if not names:
            msg = "a search space needs at least one domain"
            raise ValueError(msg)
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            msg = f"duplicate domain names: {', '.join(duplicates)}"
            raise ValueError(msg)

        by_name = {d.name: d for d in self.domains}
        if "tech" in by_name and "v_op" in by_name and self.voltage_by_tech:
            admissible = {v for sub in self.voltage_by_tech.values() for v in sub}
            uncovered = [v for v in by_name["v_op"].options if v not in admissible]
            if uncovered:
                msg = f"voltage options outside every node's range: {uncovered}"
                raise ValueError(msg)
            missing = [t for t in by_name["tech"].options if int(t) not in self.voltage_by_tech]
            if missing:
                msg = f"technology nodes without a voltage range: {missing}"
                raise ValueError(msg)

        if self.mode == "weight_swapping" and "bits_cell" in by_name and by_name["bits_cell"].options != (1.0,):
            msg = "weight_swapping spaces store one bit per cell; bits_cell must be [1]"
            raise ValueError(msg)
        return self

    @property
    def names(self) -> tuple[str, ...]:
        """Domain names in gene order."""
        return tuple(d.name for d in self.domains)

    @property
    def sizes(self) -> tuple[int, ...]:
        """Option counts in gene order."""
        return tuple(d.size for d in self.domains)

    def index_of(self, name: str) -> int:
        """Gene position of a named domain."""
        try:
            return self.names.index(name)
        except ValueError as e:
            msg = f"Unknown parameter: '{name}'"
            raise SpaceConfigError(msg) from e

    @classmethod
    def from_json(cls, content: str) -> SearchSpace:
        """Parse a search space from its JSON file content.

        Raises:
            SpaceConfigError: If the JSON is invalid or doesn't match the schema
        """
        try:
            return cls.model_validate_json(content)
        except ValueError as e:
            msg = f"Invalid search space: {e}"
            raise SpaceConfigError(msg) from e

    def to_json(self) -> str:
        """Serialize to the JSON file format."""
        return self.model_dump_json(indent=2)


@dataclass(frozen=True, order=True)
class DesignPoint:
    """A candidate design: one option index per domain."""

    gene: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.gene)


@dataclass(frozen=True)
class HardwareConfig:
    """Decoded hardware parameters in physical units."""

    xbar_rows: int
    xbar_cols: int
    crossbars_per_tile: int
    tiles_per_router: int
    tile_groups_per_chip: int
    v_op: float
    t_cycle_ns: float
    glb_bytes: int
    bits_per_cell: int
    tech_nm: int

    @property
    def n_crossbars(self) -> int:
        """Total crossbar macros on the chip."""
        return self.crossbars_per_tile * self.tiles_per_router * self.tile_groups_per_chip
