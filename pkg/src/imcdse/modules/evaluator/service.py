"""Analytical energy, latency and area model of a tiled IMC accelerator.

Each weighted layer is mapped onto crossbar folds of rows x cols cells and
driven bit-serially (act_bits passes per input vector). One ADC per macro
serializes the columns; folds of a layer run in parallel. Weightless layers
(attention products, pooling) run on a digital datapath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from imcdse.modules.evaluator.models import (
    HwMetrics,
    InfeasibleMappingError,
    ModelCoefficients,
    ZeroWorkloadError,
)
from imcdse.modules.space.models import HardwareConfig, Mode
from imcdse.modules.space.service import cell_capacity
from imcdse.modules.workload.models import Workload
from imcdse.presets import read_preset_or_path
from imcdse.utils.logging import get_logger

PJ_TO_MJ = 1e-9
NS_TO_MS = 1e-6
MIB = 1024 * 1024
REFERENCE_NODE_NM = 32


def load_coefficients(ref: str | Path) -> ModelCoefficients:
    """Load model coefficients from a JSON file or a bundled preset ('rram', 'sram')."""
    coeffs = ModelCoefficients.from_json(read_preset_or_path("coefficients", ref))
    get_logger().debug("Loaded model coefficients %s", ref)
    return coeffs


@dataclass(frozen=True)
class LayerTable:
    """Per-layer columns of a workload as numpy arrays."""

    fan_in: np.ndarray
    fan_out: np.ndarray
    weight_bits: np.ndarray
    weight_count: np.ndarray
    macs: np.ndarray
    act_bytes: np.ndarray
    weighted: np.ndarray


TABLE_CACHE_SIZE = 64


@lru_cache(maxsize=TABLE_CACHE_SIZE)
def layer_table(workload: Workload, act_bits: int = 8) -> LayerTable:
    """Columnar view of a workload's layers.

    Cached by workload value, so equal descriptors loaded twice share one table.
    The arrays are read-only.
    """
    layers = workload.layers
    fan_in = np.array([layer.fan_in for layer in layers], dtype=np.float64)
    fan_out = np.array([layer.fan_out for layer in layers], dtype=np.float64)
    activations = np.array([layer.in_activations + layer.out_activations for layer in layers], dtype=np.float64)
    table = LayerTable(
        fan_in=fan_in,
        fan_out=fan_out,
        weight_bits=np.array([layer.weight_bits for layer in layers], dtype=np.float64),
        weight_count=fan_in * fan_out,
        macs=np.array([layer.macs for layer in layers], dtype=np.float64),
        act_bytes=activations * act_bits / 8,
        weighted=fan_in * fan_out > 0,
    )
    for column in vars(table).values():
        column.setflags(write=False)
    return table


def area(config: HardwareConfig, coeffs: ModelCoefficients) -> float:
    """On-chip area in mm² (off-chip DRAM excluded).

    A = N_xbar·(rows·cols·a_cell + a_adc + a_periph)·s + G·a_router·s + GLB_MiB·a_glb·s,
    with s = (tech / 32)².
    """
    scale = (config.tech_nm / REFERENCE_NODE_NM) ** 2
    cell_mm2 = coeffs.a_cell_um2 * 1e-6
    macro = config.xbar_rows * config.xbar_cols * cell_mm2 + coeffs.a_adc_mm2 + coeffs.a_periph_mm2
    routers = config.tile_groups_per_chip * coeffs.a_router_mm2
    glb = config.glb_bytes / MIB * coeffs.a_glb_mm2_per_mib
    return (config.n_crossbars * macro + routers + glb) * scale


def swap_rounds(config: HardwareConfig, workload: Workload) -> int:
    """Weight-loading rounds when layers are grouped greedily in order.

    Zero when the whole model fits on chip. A layer larger than the chip
    takes ceil(cells / capacity) rounds on its own.
    """
    capacity = cell_capacity(config)
    cells = _cells_per_layer(config, workload)
    if sum(cells) <= capacity:
        return 0

    rounds = 0
    filled = 0
    for layer_cells in cells:
        if layer_cells == 0:
            continue
        if layer_cells > capacity:
            if filled:
                rounds += 1
                filled = 0
            rounds += math.ceil(layer_cells / capacity)
        elif filled + layer_cells > capacity:
            rounds += 1
            filled = layer_cells
        else:
            filled += layer_cells
    if filled:
        rounds += 1
    return rounds


def _cells_per_layer(config: HardwareConfig, workload: Workload) -> list[int]:
    return [layer.weight_count * math.ceil(layer.weight_bits / config.bits_per_cell) for layer in workload.layers]


def evaluate(
    config: HardwareConfig,
    workload: Workload,
    mode: Mode,
    coeffs: ModelCoefficients,
) -> HwMetrics:
    """Energy, latency and area of one workload on one design.

    Args:
        config: Decoded hardware configuration
        workload: Workload to run
        mode: 'weight_stationary' (all weights resident) or 'weight_swapping' (weights streamed from DRAM)
        coeffs: Model coefficients

    Returns:
        HwMetrics in mJ, ms and mm²

    Raises:
        InfeasibleMappingError: If weights exceed capacity in weight-stationary mode
        ZeroWorkloadError: If the workload has no MACs
    """
    if workload.total_macs == 0:
        msg = f"workload '{workload.name}' performs no MACs"
        raise ZeroWorkloadError(msg)

    capacity = cell_capacity(config)
    cells = _cells_per_layer(config, workload)
    if mode == "weight_stationary" and sum(cells) > capacity:
        msg = f"workload '{workload.name}' needs {sum(cells)} cells, design holds {capacity}"
        raise InfeasibleMappingError(msg)

    t = layer_table(workload, coeffs.act_bits)
    rows, cols = config.xbar_rows, config.xbar_cols
    k_tech = config.tech_nm / REFERENCE_NODE_NM
    v_ratio = config.v_op / coeffs.v_ref
    t_eff = max(config.t_cycle_ns, coeffs.t_min_ns / v_ratio)

    safe_weights = np.where(t.weighted, t.weight_count, 1.0)
    passes = np.where(t.weighted, t.macs / safe_weights * coeffs.act_bits, 0.0)
    cells_per_weight = np.ceil(t.weight_bits / config.bits_per_cell)
    folds = np.ceil(t.fan_in / rows) * np.ceil(t.fan_out * cells_per_weight / cols)

    per_pass_pj = rows * coeffs.e_cell_pj * v_ratio**2 * k_tech + cols * coeffs.e_adc_pj * k_tech
    traffic_pj = t.act_bytes * (coeffs.e_buf_pj_per_byte + coeffs.e_router_pj_per_byte)
    array_pj = folds * passes * per_pass_pj
    digital_pj = np.where(t.weighted, 0.0, t.macs * coeffs.e_digital_pj_per_mac * k_tech)
    energy_pj = array_pj + digital_pj + traffic_pj

    array_ns = passes * cols * t_eff
    digital_ns = np.where(t.weighted, 0.0, t.macs / coeffs.digital_gmacs)
    latency_ns = array_ns + digital_ns

    overflow = np.maximum(t.act_bytes - config.glb_bytes, 0.0)
    energy_pj = energy_pj + overflow * coeffs.e_dram_pj_per_byte
    latency_ns = latency_ns + overflow / coeffs.dram_gbps

    total_energy_pj = float(np.sum(energy_pj))
    total_latency_ns = float(np.sum(latency_ns))

    if mode == "weight_swapping":
        rounds = swap_rounds(config, workload)
        if rounds:
            # A layer spanning several rounds repeats its passes once per round.
            repeats = np.array([max(1, math.ceil(c / capacity)) for c in cells], dtype=np.float64)
            total_latency_ns += float(np.sum(array_ns * (repeats - 1)))
            swap_bytes = float(np.sum(t.weight_count * t.weight_bits)) / 8
            total_energy_pj += swap_bytes * coeffs.e_dram_pj_per_byte
            total_latency_ns += swap_bytes / coeffs.dram_gbps + rounds * coeffs.swap_round_overhead_ns

    return HwMetrics(
        energy_mj=total_energy_pj * PJ_TO_MJ,
        latency_ms=total_latency_ns * NS_TO_MS,
        area_mm2=area(config, coeffs),
    )
