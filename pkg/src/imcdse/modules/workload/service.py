"""Workload loading and weight-footprint arithmetic."""

from __future__ import annotations

import math
from collections.abc import Sequence
from pathlib import Path

from imcdse.modules.space.models import Mode
from imcdse.modules.workload.models import LayerSpec, Workload
from imcdse.modules.workload.zoo import ZOO
from imcdse.presets import list_presets, read_preset_or_path
from imcdse.utils.logging import get_logger

# Named workload sets
WORKLOAD_SETS: dict[str, tuple[str, ...]] = {
    "default": ("resnet18", "vgg16", "alexnet", "mobilenetv3"),
    "nine": (
        "resnet18",
        "vgg16",
        "alexnet",
        "mobilenetv3",
        "mobilebert",
        "densenet201",
        "resnet50",
        "vit",
        "gpt2-medium",
    ),
}


class UnknownWorkloadError(ValueError):
    """Raised when a workload reference matches no file, preset or zoo entry."""


def load_workloads(path: str | Path) -> list[Workload]:
    """Load workloads from a descriptor file, in file order.

    Args:
        path: JSON file holding one workload object or an array of them

    Returns:
        Parsed workloads

    Raises:
        FileNotFoundError: If the file doesn't exist
        WorkloadParseError: If the file is not valid JSON
        WorkloadSchemaError: If a descriptor violates the schema
    """
    path = Path(path)
    try:
        content = path.read_text()
    except FileNotFoundError as e:
        msg = f"Workload file not found: {path}"
        raise FileNotFoundError(msg) from e
    workloads = Workload.list_from_json(content)
    get_logger().debug("Loaded %d workloads from %s", len(workloads), path)
    return workloads


def resolve_workload(ref: str) -> list[Workload]:
    """Resolve one reference: a file path, a bundled descriptor, a zoo model or a set name."""
    if ref in WORKLOAD_SETS:
        return [w for name in WORKLOAD_SETS[ref] for w in resolve_workload(name)]
    if Path(ref).is_file() or ref.endswith(".json"):
        return load_workloads(ref)
    if ref in list_presets("workloads"):
        return Workload.list_from_json(read_preset_or_path("workloads", ref))
    if ref in ZOO:
        return [ZOO[ref]()]
    known = sorted({*WORKLOAD_SETS, *ZOO, *list_presets("workloads")})
    msg = f"Unknown workload: '{ref}' (known: {', '.join(known)})"
    raise UnknownWorkloadError(msg)


def resolve_workloads(refs: Sequence[str]) -> list[Workload]:
    """Resolve several references, keeping order and dropping repeated names."""
    workloads: list[Workload] = []
    seen: set[str] = set()
    for ref in refs:
        for workload in resolve_workload(ref):
            if workload.name not in seen:
                seen.add(workload.name)
                workloads.append(workload)
    return workloads


def layer_cells(layer: LayerSpec, bits_per_cell: int, weight_bits: int | None = None) -> int:
    """Cells needed to store one layer's weights."""
    bits = weight_bits if weight_bits is not None else layer.weight_bits
    return layer.weight_count * math.ceil(bits / bits_per_cell)


def required_cells(workload: Workload, bits_per_cell: int, weight_bits: int | None = None) -> int:
    """Cells needed to keep every weight of a workload resident.

    Args:
        workload: Workload to map
        bits_per_cell: Bits stored per memory cell
        weight_bits: Override for every layer's weight precision (per-layer value when None)
    """
    return sum(layer_cells(layer, bits_per_cell, weight_bits) for layer in workload.layers)


def largest_layer_cells(workload: Workload, bits_per_cell: int, weight_bits: int | None = None) -> int:
    """Cell footprint of the workload's largest layer."""
    return max(layer_cells(layer, bits_per_cell, weight_bits) for layer in workload.layers)


def largest_workload(workloads: Sequence[Workload], mode: Mode, bits_per_cell: int = 1) -> Workload:
    """Pick the workload that drives hardware sizing.

    Weight-swapping hardware must hold the largest single layer; weight-stationary
    hardware must hold the whole model. The first workload wins ties.
    """
    measure = largest_layer_cells if mode == "weight_swapping" else required_cells
    return max(workloads, key=lambda w: measure(w, bits_per_cell))
