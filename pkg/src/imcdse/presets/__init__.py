"""Bundled preset loading for imcdse.

Search spaces, model coefficients and workload descriptors ship as JSON files
inside this package and are read through importlib.resources.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Literal

PresetKind = Literal["spaces", "coefficients", "workloads"]


def list_presets(kind: PresetKind) -> list[str]:
    """List the names of bundled presets of one kind.

    Args:
        kind: Preset directory ("spaces", "coefficients" or "workloads")

    Returns:
        Sorted preset names without the ``.json`` suffix
    """
    root = resources.files("imcdse.presets").joinpath(kind)
    return sorted(entry.name.removesuffix(".json") for entry in root.iterdir() if entry.name.endswith(".json"))


def get_preset(kind: PresetKind, name: str) -> str:
    """Load a bundled preset file.

    Args:
        kind: Preset directory
        name: Preset name (e.g. 'rram')

    Returns:
        Preset content as a string

    Raises:
        FileNotFoundError: If the preset doesn't exist
    """
    try:
        return resources.files("imcdse.presets").joinpath(kind).joinpath(f"{name}.json").read_text()
    except FileNotFoundError as e:
        available = ", ".join(list_presets(kind))
        msg = f"Unknown {kind[:-1]} preset: '{name}' (available: {available})"
        raise FileNotFoundError(msg) from e


def read_preset_or_path(kind: PresetKind, ref: str | Path) -> str:
    """Read JSON text from a file path, falling back to a bundled preset name.

    A reference is treated as a path when it names an existing file or ends
    in ``.json``; anything else is looked up among the bundled presets.
    """
    path = Path(ref)
    if path.is_file() or str(ref).endswith(".json"):
        try:
            return path.read_text()
        except FileNotFoundError as e:
            msg = f"File not found: {path}"
            raise FileNotFoundError(msg) from e
    return get_preset(kind, str(ref))
