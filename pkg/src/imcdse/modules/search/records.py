"""Run records: run.json, convergence.csv and timing.json.

run.json holds the configuration snapshot, the best and top-k designs and the
per-generation history. Wall times go to timing.json so that two runs with the
same seed produce byte-identical run.json files.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from imcdse.modules.objective.service import score_unit
from imcdse.modules.search.models import RunResult, RunSnapshot, ScoredDesign

RECORD_VERSION = 1
CONVERGENCE_HEADER = ("generation", "phase", "best_score", "mean_score", "evals")


class RecordError(ValueError):
    """Raised when a run record can't be read."""


def finite_or_none(value: float | None) -> float | None:
    """JSON-safe float: infinities and NaN become null."""
    if value is None or not math.isfinite(value):
        return None
    return value


def design_to_dict(design: ScoredDesign, workload_names: list[str]) -> dict[str, Any]:
    """Serialize a scored design with its per-workload metrics."""
    score = design.score
    per_workload = {
        name: {
            "energy_mj": m.energy_mj,
            "latency_ms": m.latency_ms,
            "area_mm2": m.area_mm2,
            "edap": m.edap,
        }
        for name, m in zip(workload_names, score.per_workload, strict=False)
    }
    return {
        "gene": list(design.point.gene),
        "params": design.params,
        "score": finite_or_none(score.value),
        "feasible": score.feasible,
        "area_mm2": score.area_mm2,
        "cost": score.cost,
        "reason": score.reason,
        "per_workload": per_workload,
    }


def result_to_record(result: RunResult) -> dict[str, Any]:
    """Build the run.json document."""
    snapshot = result.snapshot
    names = [w.name for w in snapshot.workloads]
    return {
        "version": RECORD_VERSION,
        "strategy": snapshot.strategy,
        "seed": snapshot.seed,
        "target_workloads": result.target_workloads,
        "score_unit": score_unit(snapshot.objective, len(names)),
        "eval_count": result.eval_count,
        "sampling_evals": result.sampling_evals,
        "search_evals": result.search_evals,
        "draws": result.draws,
        "best": design_to_dict(result.best, names),
        "top_k": [design_to_dict(d, names) for d in result.top_k],
        "history": [
            {
                "generation": row.generation,
                "phase": row.phase,
                "best_score": finite_or_none(row.best_score),
                "mean_score": finite_or_none(row.mean_score),
                "evals": row.evals,
            }
            for row in result.history
        ],
        "snapshot": snapshot.model_dump(mode="json"),
    }


def write_run(result: RunResult, out_dir: Path) -> list[Path]:
    """Write run.json, convergence.csv and timing.json into a directory.

    Returns:
        Paths of the written files
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    run_path = out_dir / "run.json"
    run_path.write_text(json.dumps(result_to_record(result), indent=2) + "\n")

    convergence_path = out_dir / "convergence.csv"
    with convergence_path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CONVERGENCE_HEADER)
        for row in result.history:
            writer.writerow([row.generation, row.phase, repr(row.best_score), repr(row.mean_score), row.evals])

    timing_path = out_dir / "timing.json"
    timing = {
        "sampling_s": result.timing.sampling_s,
        "search_s": result.timing.search_s,
        "total_s": result.timing.total_s,
        "sampling_share": result.timing.sampling_s / result.timing.total_s if result.timing.total_s else 0.0,
    }
    timing_path.write_text(json.dumps(timing, indent=2) + "\n")
    return [run_path, convergence_path, timing_path]


def load_snapshot(path: Path) -> tuple[RunSnapshot, dict[str, Any]]:
    """Read a run.json and rebuild its configuration snapshot.

    Returns:
        The snapshot and the raw record

    Raises:
        FileNotFoundError: If the record doesn't exist
        RecordError: If the record is malformed
    """
    try:
        record = json.loads(path.read_text())
    except FileNotFoundError as e:
        msg = f"Run record not found: {path}"
        raise FileNotFoundError(msg) from e
    except json.JSONDecodeError as e:
        msg = f"Invalid run record {path}: line {e.lineno}: {e.msg}"
        raise RecordError(msg) from e

    if not isinstance(record, dict) or "snapshot" not in record:
        msg = f"Run record {path} has no snapshot"
        raise RecordError(msg)
    try:
        return RunSnapshot.model_validate(record["snapshot"]), record
    except ValidationError as e:
        msg = f"Invalid snapshot in {path}: {e}"
        raise RecordError(msg) from e
