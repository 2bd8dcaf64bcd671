"""Workload descriptors, loading, synthetic generators and footprint arithmetic."""

from imcdse.modules.workload.models import (
    LayerKind,
    LayerSpec,
    Workload,
    WorkloadParseError,
    WorkloadSchemaError,
)
from imcdse.modules.workload.service import (
    WORKLOAD_SETS,
    UnknownWorkloadError,
    largest_layer_cells,
    largest_workload,
    layer_cells,
    load_workloads,
    required_cells,
    resolve_workload,
    resolve_workloads,
)
from imcdse.modules.workload.synthetic import UnknownGeneratorError, generate_synthetic
from imcdse.modules.workload.zoo import ZOO

__all__ = [
    "WORKLOAD_SETS",
    "ZOO",
    "LayerKind",
    "LayerSpec",
    "UnknownGeneratorError",
    "UnknownWorkloadError",
    "Workload",
    "WorkloadParseError",
    "WorkloadSchemaError",
    "generate_synthetic",
    "largest_layer_cells",
    "largest_workload",
    "layer_cells",
    "load_workloads",
    "required_cells",
    "resolve_workload",
    "resolve_workloads",
]
