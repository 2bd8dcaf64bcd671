"""Search-space operations: sizing, decoding, capacity and gene relaxation."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from pathlib import Path

import numpy as np

from imcdse.modules.space.models import (
    MAX_CELLS,
    PARAMETER_NAMES,
    CapacityOverflowError,
    DesignPoint,
    HardwareConfig,
    IndexOutOfDomainError,
    SearchSpace,
    SpaceConfigError,
)
from imcdse.presets import read_preset_or_path
from imcdse.utils.logging import get_logger

KIB = 1024


def load_space(ref: str | Path) -> SearchSpace:
    """Load a search space from a JSON file or a bundled preset name.

    Args:
        ref: Path to a JSON file, or a preset name ('rram', 'rram-reduced', 'sram', 'sram-tech')

    Returns:
        Parsed SearchSpace

    Raises:
        FileNotFoundError: If neither a file nor a preset matches
        SpaceConfigError: If the content is invalid
    """
    logger = get_logger()
    space = SearchSpace.from_json(read_preset_or_path("spaces", ref))
    logger.debug("Loaded search space %s: %d domains, %d points", ref, len(space.domains), space_size(space))
    return space


def space_size(space: SearchSpace) -> int:
    """Number of design points: the product of per-domain option counts."""
    return math.prod(space.sizes)


def validate_point(space: SearchSpace, point: DesignPoint) -> None:
    """Check a design point against the space.

    Raises:
        IndexOutOfDomainError: If the gene length or any index is out of range
    """
    if len(point.gene) != len(space.domains):
        msg = f"gene has {len(point.gene)} entries, space has {len(space.domains)} domains"
        raise IndexOutOfDomainError(msg)
    for index, domain in zip(point.gene, space.domains, strict=True):
        if not 0 <= index < domain.size:
            msg = f"index {index} outside domain '{domain.name}' with {domain.size} options"
            raise IndexOutOfDomainError(msg)


def clamp_voltage(space: SearchSpace, v_op: float, tech_nm: int) -> float:
    """Clamp a voltage to the nearest admissible value for a technology node.

    Ties go to the lower voltage. Nodes without a registered range are unrestricted.
    """
    admissible = space.voltage_by_tech.get(tech_nm)
    if not admissible or v_op in admissible:
        return v_op
    return min(admissible, key=lambda v: (abs(v - v_op), v))


def decode(space: SearchSpace, point: DesignPoint) -> HardwareConfig:
    """Map a design point onto physical hardware parameters.

    Args:
        space: Search space the point belongs to
        point: Design point to decode

    Returns:
        Decoded HardwareConfig with the voltage clamped to the node's range

    Raises:
        IndexOutOfDomainError: If any gene index exceeds its domain
        SpaceConfigError: If the space lacks one of the canonical parameters
    """
    validate_point(space, point)
    values = {d.name: d.options[i] for d, i in zip(space.domains, point.gene, strict=True)}
    missing = [name for name in PARAMETER_NAMES if name not in values]
    if missing:
        msg = f"search space is missing parameters: {', '.join(missing)}"
        raise SpaceConfigError(msg)

    tech_nm = int(values["tech"])
    return HardwareConfig(
        xbar_rows=int(values["xbar_rows"]),
        xbar_cols=int(values["xbar_cols"]),
        crossbars_per_tile=int(values["c_per_tile"]),
        tiles_per_router=int(values["t_per_router"]),
        tile_groups_per_chip=int(values["g_per_chip"]),
        v_op=clamp_voltage(space, values["v_op"], tech_nm),
        t_cycle_ns=values["t_cycle"],
        glb_bytes=int(values["glb"] * KIB),
        bits_per_cell=int(values["bits_cell"]),
        tech_nm=tech_nm,
    )


def cell_capacity(config: HardwareConfig) -> int:
    """Total memory cells of a configuration.

    Raises:
        CapacityOverflowError: If the product exceeds the signed 64-bit range
    """
    capacity = (
        config.xbar_rows
        * config.xbar_cols
        * config.crossbars_per_tile
        * config.tiles_per_router
        * config.tile_groups_per_chip
    )
    if capacity > MAX_CELLS:
        msg = f"cell capacity {capacity} exceeds the 64-bit range"
        raise CapacityOverflowError(msg)
    return capacity


def to_real(point: DesignPoint) -> np.ndarray:
    """Relax a design point onto the real line: index i becomes i + 0.5."""
    return np.asarray(point.gene, dtype=np.float64) + 0.5


def from_real(space: SearchSpace, reals: np.ndarray) -> DesignPoint:
    """Snap a real vector back onto the index lattice, clamping into range."""
    upper = np.asarray(space.sizes, dtype=np.int64) - 1
    indices = np.clip(np.floor(reals).astype(np.int64), 0, upper)
    return DesignPoint(tuple(int(i) for i in indices))


def real_bounds(space: SearchSpace) -> tuple[np.ndarray, np.ndarray]:
    """Lower and upper bounds of the relaxed gene vector."""
    sizes = np.asarray(space.sizes, dtype=np.float64)
    return np.zeros_like(sizes), sizes


def enumerate_points(space: SearchSpace, *, reverse: bool = False) -> Iterator[DesignPoint]:
    """Yield every design point in lexicographic (or reverse) order."""
    ranges = [range(n - 1, -1, -1) if reverse else range(n) for n in space.sizes]
    for gene in itertools.product(*ranges):
        yield DesignPoint(gene)


def random_point(space: SearchSpace, rng: np.random.Generator) -> DesignPoint:
    """Draw one design point uniformly at random."""
    return DesignPoint(tuple(int(i) for i in rng.integers(0, space.sizes)))


def median_point(space: SearchSpace) -> DesignPoint:
    """Design point at the median option (index n // 2) of every domain."""
    return DesignPoint(tuple(n // 2 for n in space.sizes))


def max_point(space: SearchSpace) -> DesignPoint:
    """Design point at the largest option of every domain."""
    return DesignPoint(tuple(n - 1 for n in space.sizes))


def point_values(space: SearchSpace, point: DesignPoint) -> dict[str, float]:
    """Raw option values of a design point keyed by parameter name."""
    validate_point(space, point)
    return {d.name: d.options[i] for d, i in zip(space.domains, point.gene, strict=True)}
