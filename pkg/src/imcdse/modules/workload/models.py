"""Pydantic models for workload descriptors.

A workload is an ordered list of layers lowered to matrix form: every weighted
layer is a fan_in x fan_out matrix applied to out_activations / fan_out input
vectors per inference.
"""

from __future__ import annotations

import json
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator, model_validator

LayerKind = Literal["conv", "fc", "depthwise_conv", "attention", "other"]


class WorkloadParseError(ValueError):
    """Raised when a workload file is not valid JSON."""


class WorkloadSchemaError(ValueError):
    """Raised when a workload descriptor violates the schema."""


class LayerSpec(BaseModel):
    """One layer of a workload after im2col-style lowering.

    Layers without weights (attention score/context products, pooling) set
    fan_in and fan_out to 0 and give their MAC count explicitly.
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(min_length=1)
    kind: LayerKind
    fan_in: int = Field(ge=0)
    fan_out: int = Field(ge=0)
    weight_bits: int = Field(default=8, ge=1)
    macs: int = Field(ge=0)
    in_activations: int = Field(ge=0)
    out_activations: int = Field(ge=0)

    @model_validator(mode="before")
    @classmethod
    def default_macs(cls, data: Any) -> Any:
        """Default macs to fan_in x out_activations when omitted."""
        if isinstance(data, dict) and data.get("macs") is None:
            try:
                macs = int(data["fan_in"]) * int(data["out_activations"])
            except (KeyError, TypeError, ValueError):
                return data
            return {**data, "macs": macs}
        return data

    @model_validator(mode="after")
    def validate_weights(self) -> LayerSpec:
        """Weighted layers need both matrix dimensions and at least one MAC per weight."""
        if (self.fan_in == 0) != (self.fan_out == 0):
            msg = f"layer '{self.name}': fan_in and fan_out must both be zero or both positive"
            raise ValueError(msg)
        if self.macs < self.weight_count:
            msg = f"layer '{self.name}': macs ({self.macs}) below weight count ({self.weight_count})"
            raise ValueError(msg)
        return self

    @property
    def weight_count(self) -> int:
        """Number of weights (fan_in x fan_out)."""
        return self.fan_in * self.fan_out


class Workload(BaseModel):
    """A named neural-network workload."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(min_length=1)
    layers: tuple[LayerSpec, ...]

    @field_validator("layers", mode="after")
    @classmethod
    def validate_layers(cls, v: tuple[LayerSpec, ...]) -> tuple[LayerSpec, ...]:
        """Layers must be non-empty with unique names."""
        if not v:
            msg = "a workload needs at least one layer"
            raise ValueError(msg)
        seen: set[str] = set()
        for layer in v:
            if layer.name in seen:
                msg = f"duplicate layer name: '{layer.name}'"
                raise ValueError(msg)
            seen.add(layer.name)
        return v

    @property
    def weight_count(self) -> int:
        """Total weights over all layers."""
        return sum(layer.weight_count for layer in self.layers)

    @property
    def total_macs(self) -> int:
        """Total MACs per inference."""
        return sum(layer.macs for layer in self.layers)

    @classmethod
    def list_from_json(cls, content: str) -> list[Workload]:
        """Parse one workload object or an array of workloads.

        Raises:
            WorkloadParseError: If the content is not valid JSON (line/column reported)
            WorkloadSchemaError: If a descriptor violates the schema (field path reported)
        """
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            msg = f"Invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
            raise WorkloadParseError(msg) from e

        try:
            if isinstance(data, list):
                return _WORKLOAD_LIST.validate_python(data)
            return [cls.model_validate(data)]
        except ValidationError as e:
            msg = f"Invalid workload: {e}"
            raise WorkloadSchemaError(msg) from e

    def to_json(self) -> str:
        """Serialize to the descriptor file format."""
        return self.model_dump_json(indent=2)


_WORKLOAD_LIST = TypeAdapter(list[Workload])
