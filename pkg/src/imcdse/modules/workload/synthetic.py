"""Deterministic synthetic workloads for tests and quick experiments.

Generator formulas (i = 0 .. scale-1, base = 1 + seed mod 4):

- ``mlp``: width w_i = 64·base·2^i; layer i is FC w_i -> w_(i+1) applied to
  one input vector.
- ``convstack``: channels c_i = 8·base·2^i, spatial side s_i = max(1, 32 / 2^i);
  layer i is a 3x3 conv c_i -> c_(i+1) producing c_(i+1)·s_i² outputs, so
  macs = weight_count · s_i².
"""

from __future__ import annotations

from typing import Literal, get_args

from imcdse.modules.workload.models import LayerSpec, Workload, WorkloadSchemaError

GeneratorKind = Literal["mlp", "convstack"]


class UnknownGeneratorError(ValueError):
    """Raised when a synthetic generator kind is not known."""


def generate_synthetic(kind: str, scale: int, seed: int) -> Workload:
    """Build a synthetic workload.

    Args:
        kind: Generator kind ('mlp' or 'convstack')
        scale: Number of layers (>= 1)
        seed: Selects the base width

    Returns:
        Generated workload named '<kind>-<scale>-<seed>'

    Raises:
        UnknownGeneratorError: If kind is not a known generator
        WorkloadSchemaError: If scale < 1
    """
    if kind not in get_args(GeneratorKind):
        msg = f"Unknown generator kind: '{kind}' (expected one of: {', '.join(get_args(GeneratorKind))})"
        raise UnknownGeneratorError(msg)
    if scale < 1:
        msg = f"scale must be at least 1, got {scale}"
        raise WorkloadSchemaError(msg)

    base = 1 + seed % 4
    layers = _mlp_layers(scale, base) if kind == "mlp" else _convstack_layers(scale, base)
    return Workload(name=f"{kind}-{scale}-{seed}", layers=tuple(layers))


def _mlp_layers(scale: int, base: int) -> list[LayerSpec]:
    layers = []
    for i in range(scale):
        fan_in = 64 * base * 2**i
        fan_out = 2 * fan_in
        layers.append(
            LayerSpec(
                name=f"fc{i}",
                kind="fc",
                fan_in=fan_in,
                fan_out=fan_out,
                in_activations=fan_in,
                out_activations=fan_out,
            )
        )
    return layers


def _convstack_layers(scale: int, base: int) -> list[LayerSpec]:
    layers = []
    for i in range(scale):
        c_in = 8 * base * 2**i
        c_out = 2 * c_in
        side = max(1, 32 // 2**i)
        layers.append(
            LayerSpec(
                name=f"conv{i}",
                kind="conv",
                fan_in=9 * c_in,
                fan_out=c_out,
                in_activations=c_in * side * side,
                out_activations=c_out * side * side,
            )
        )
    return layers
