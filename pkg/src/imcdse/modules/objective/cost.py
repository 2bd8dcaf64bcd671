"""Fabrication cost model per CMOS technology node."""

from __future__ import annotations

from dataclasses import dataclass

EFFECTIVE_WAFER_AREA_MM2 = 70000.0
REFERENCE_NODE_NM = 32


class UnknownTechNodeError(ValueError):
    """Raised when a technology node has no cost data."""


@dataclass(frozen=True)
class TechNode:
    """Cost and operating data of one technology node."""

    nm: int
    alpha: float
    wafer_cost_usd: float
    yield_low: float
    yield_high: float
    v_min: float
    v_max: float

    @property
    def yield_mid(self) -> float:
        """Arithmetic midpoint of the yield range."""
        return (self.yield_low + self.yield_high) / 2


TECH_NODES: dict[int, TechNode] = {
    node.nm: node
    for node in (
        TechNode(90, 0.413, 1651.5, 0.90, 0.95, 0.95, 1.30),
        TechNode(65, 0.477, 1939.0, 0.90, 0.95, 0.85, 1.20),
        TechNode(45, 0.606, 2237.5, 0.80, 0.90, 0.75, 1.10),
        TechNode(32, 1.000, 3500.0, 0.70, 0.90, 0.65, 1.00),
        TechNode(22, 1.282, 4338.5, 0.70, 0.90, 0.65, 1.00),
        TechNode(14, 1.498, 4492.0, 0.60, 0.80, 0.55, 0.90),
        TechNode(10, 2.243, 5600.0, 0.50, 0.70, 0.50, 0.85),
        TechNode(7, 3.871, 9291.5, 0.50, 0.70, 0.45, 0.80),
    )
}


def tech_node(tech_nm: int) -> TechNode:
    """Look up a technology node.

    Raises:
        UnknownTechNodeError: If the node is not tabulated
    """
    try:
        return TECH_NODES[tech_nm]
    except KeyError as e:
        known = ", ".join(str(n) for n in sorted(TECH_NODES))
        msg = f"Unknown technology node: {tech_nm} nm (known: {known})"
        raise UnknownTechNodeError(msg) from e


def alpha(tech_nm: int) -> float:
    """Normalized fabrication cost per mm² (32 nm = 1)."""
    return tech_node(tech_nm).alpha


def cost(area_mm2: float, tech_nm: int) -> float:
    """Normalized fabrication cost of a die: alpha(tech) x area."""
    return alpha(tech_nm) * area_mm2


def recompute_alpha(tech_nm: int, effective_area_mm2: float = EFFECTIVE_WAFER_AREA_MM2) -> float:
    """Derive alpha from wafer cost and mid-range yield, normalized to 32 nm.

    Cost per good mm² is wafer_cost / (A_e x yield).
    """

    def per_good_mm2(node: TechNode) -> float:
        return node.wafer_cost_usd / (effective_area_mm2 * node.yield_mid)

    return per_good_mm2(tech_node(tech_nm)) / per_good_mm2(tech_node(REFERENCE_NODE_NM))
