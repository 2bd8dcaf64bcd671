"""End-to-end tests for the imcdse CLI.

Each test drives the real commands through CliRunner on the reduced RRAM
space with small populations and checks the result files they write.
"""

import csv
import json

import pytest
from typer.testing import CliRunner

from imcdse import __version__
from imcdse.main import app
from tests.conftest import make_space

runner = CliRunner()

ENV = {"NO_COLOR": "1", "TERM": "dumb", "IMCDSE_OUT_DIR": None, "IMCDSE_THREADS": None, "IMCDSE_CACHE": None}
QUICK = [
    "--space",
    "rram-reduced",
    "-w",
    "resnet18",
    "-w",
    "mobilenetv3",
    "--ph",
    "40",
    "--pe",
    "20",
    "--pga",
    "6",
    "-g",
    "2",
    "--seed",
    "3",
]


def invoke(*args):
    return runner.invoke(app, [str(a) for a in args], env=ENV)


def read_csv(path):
    with path.open() as f:
        return list(csv.DictReader(f))


@pytest.mark.e2e
class TestOptimize:
    def test_writes_run_files(self, tmp_path):
        result = invoke("optimize", *QUICK, "-o", tmp_path)
        assert result.exit_code == 0, result.output
        assert "Best score" in result.output
        for name in ("run.json", "convergence.csv", "timing.json"):
            assert (tmp_path / name).exists()
        record = json.loads((tmp_path / "run.json").read_text())
        assert record["strategy"] == "joint"
        assert record["target_workloads"] == ["resnet18", "mobilenetv3"]
        assert record["best"]["feasible"]

    def test_same_seed_byte_identical(self, tmp_path):
        assert invoke("optimize", *QUICK, "-o", tmp_path / "a").exit_code == 0
        assert invoke("optimize", *QUICK, "--threads", "4", "-o", tmp_path / "b").exit_code == 0
        assert (tmp_path / "a" / "run.json").read_bytes() == (tmp_path / "b" / "run.json").read_bytes()

    def test_experiment_file(self, tmp_path):
        config = tmp_path / "experiment.yaml"
        config.write_text(
            "space: rram-reduced\n"
            "workloads: [resnet18]\n"
            "p_h: 40\np_e: 20\np_ga: 6\ngenerations: 1\nseed: 9\n"
            f"out: {tmp_path / 'from-file'}\n"
        )
        result = invoke("optimize", "-c", config)
        assert result.exit_code == 0, result.output
        record = json.loads((tmp_path / "from-file" / "run.json").read_text())
        assert record["seed"] == 9


@pytest.mark.e2e
class TestBaseline:
    def test_separate_writes_one_directory_per_workload(self, tmp_path):
        result = invoke("baseline", "--strategy", "separate", *QUICK, "-o", tmp_path)
        assert result.exit_code == 0, result.output
        assert (tmp_path / "resnet18" / "run.json").exists()
        assert (tmp_path / "mobilenetv3" / "run.json").exists()

    @pytest.mark.parametrize("strategy", ["plain-ga", "largest", "sequential-median"])
    def test_single_result_strategies(self, tmp_path, strategy):
        result = invoke("baseline", "--strategy", strategy, *QUICK, "-o", tmp_path)
        assert result.exit_code == 0, result.output
        assert json.loads((tmp_path / "run.json").read_text())["strategy"] == strategy

    def test_unknown_strategy(self, tmp_path):
        result = invoke("baseline", "--strategy", "random", *QUICK, "-o", tmp_path)
        assert result.exit_code == 2
        assert "Unknown strategy" in result.output


@pytest.mark.e2e
class TestRepeat:
    def test_two_strategies(self, tmp_path):
        result = invoke("repeat", "-n", 2, "--strategy", "joint", "--strategy", "plain-ga", *QUICK, "-o", tmp_path)
        assert result.exit_code == 0, result.output
        runs = read_csv(tmp_path / "repeat.csv")
        assert [(r["strategy"], r["seed"]) for r in runs] == [
            ("joint", "3"),
            ("joint", "4"),
            ("plain-ga", "3"),
            ("plain-ga", "4"),
        ]
        summary = read_csv(tmp_path / "repeat_summary.csv")
        assert [r["strategy"] for r in summary] == ["joint", "plain-ga"]
        assert float(summary[0]["std_ratio"]) == 1.0 or summary[0]["std_ratio"] == "nan"

    def test_separate_rejected(self, tmp_path):
        result = invoke("repeat", "--strategy", "separate", *QUICK, "-o", tmp_path)
        assert result.exit_code == 2
        assert "baseline" in result.output


@pytest.mark.e2e
class TestReproduce:
    def test_round_trip(self, tmp_path):
        assert invoke("optimize", *QUICK, "-o", tmp_path / "run").exit_code == 0
        result = invoke("reproduce", tmp_path / "run" / "run.json", "-o", tmp_path / "again")
        assert result.exit_code == 0, result.output
        assert "Reproduced the recorded best design." in result.output
        assert (tmp_path / "again" / "run.json").read_bytes() == (tmp_path / "run" / "run.json").read_bytes()

    def test_mismatch_exits_one(self, tmp_path):
        assert invoke("optimize", *QUICK, "-o", tmp_path).exit_code == 0
        path = tmp_path / "run.json"
        record = json.loads(path.read_text())
        record["best"]["gene"] = [-1] * len(record["best"]["gene"])
        path.write_text(json.dumps(record))
        result = invoke("reproduce", path)
        assert result.exit_code == 1
        assert "Mismatch" in result.output

    def test_missing_record(self, tmp_path):
        assert invoke("reproduce", tmp_path / "nope.json").exit_code == 2


@pytest.mark.e2e
class TestStudies:
    def test_aggregation_study(self, tmp_path):
        result = invoke("aggregation-study", *QUICK, "-o", tmp_path)
        assert result.exit_code == 0, result.output
        rows = read_csv(tmp_path / "aggregation.csv")
        assert [(r["aggregation"], r["workload"]) for r in rows] == [
            (scheme, workload) for scheme in ("max", "all", "mean") for workload in ("resnet18", "mobilenetv3")
        ]
        for scheme in ("max", "all", "mean"):
            assert (tmp_path / scheme / "run.json").exists()
        assert "Fastest:" in result.output

    def test_tech_sweep(self, tmp_path):
        result = invoke(
            "tech-sweep", "-w", "resnet18", "--ph", 60, "--pe", 30, "--pga", 8, "-g", 1, "-o", tmp_path
        )
        assert result.exit_code == 0, result.output
        rows = read_csv(tmp_path / "pareto.csv")
        assert rows
        assert any(r["on_front"] == "1" for r in rows)
        snapshot = json.loads((tmp_path / "run.json").read_text())["snapshot"]
        assert snapshot["objective"]["terms"] == ["energy", "latency", "cost"]

    def test_oracle(self, tmp_path):
        result = invoke("oracle", "-n", 1, "--ph", 40, "--pe", 20, "--pga", 6, "-g", 2, "-o", tmp_path)
        assert result.exit_code == 0, result.output
        assert len(read_csv(tmp_path / "landscape.csv")) == 256
        assert [r["strategy"] for r in read_csv(tmp_path / "oracle.csv")] == ["joint", "plain-ga"]
        assert "Global optimum" in result.output

    def test_oracle_cap(self, tmp_path):
        result = invoke("oracle", "--space", "rram", "-o", tmp_path)
        assert result.exit_code == 2
        assert "enumeration cap" in result.output


@pytest.mark.e2e
class TestWorkloads:
    def test_list(self):
        result = invoke("workloads", "list")
        assert result.exit_code == 0
        assert "gpt2-medium" in result.output
        assert "default: resnet18, vgg16, alexnet, mobilenetv3" in result.output

    def test_export_set(self, tmp_path):
        result = invoke("workloads", "export", "default", "-o", tmp_path)
        assert result.exit_code == 0, result.output
        assert sorted(p.name for p in tmp_path.iterdir()) == [
            "alexnet.json",
            "mobilenetv3.json",
            "resnet18.json",
            "vgg16.json",
        ]

    def test_exported_descriptor_runs(self, tmp_path):
        assert invoke("workloads", "export", "alexnet", "-o", tmp_path / "w").exit_code == 0
        result = invoke("optimize", *QUICK[:2], "-w", tmp_path / "w" / "alexnet.json", *QUICK[6:], "-o", tmp_path)
        assert result.exit_code == 0, result.output
        assert json.loads((tmp_path / "run.json").read_text())["target_workloads"] == ["alexnet"]


@pytest.mark.e2e
class TestExitCodes:
    def test_version(self):
        result = invoke("--version")
        assert result.exit_code == 0
        assert f"imcdse {__version__}" in result.output

    def test_unknown_workload(self, tmp_path):
        result = invoke("optimize", "-w", "lenet", "-o", tmp_path)
        assert result.exit_code == 2
        assert "Unknown workload" in result.output

    def test_mode_contradicting_space(self, tmp_path):
        result = invoke("optimize", "--space", "rram-reduced", "--mode", "sram", "-w", "resnet18", "-o", tmp_path)
        assert result.exit_code == 2
        assert "contradicts space" in result.output
        assert not (tmp_path / "run.json").exists()

    def test_missing_experiment_file(self, tmp_path):
        assert invoke("optimize", "-c", tmp_path / "missing.yaml", "-o", tmp_path).exit_code == 2

    def test_invalid_workload_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"name": "bad", "layers": []}')
        assert invoke("optimize", "-w", path, "-o", tmp_path).exit_code == 2

    def test_unmappable_workload(self, tmp_path):
        space = tmp_path / "tiny.json"
        space.write_text(make_space().to_json())
        result = invoke("optimize", "--space", space, "-w", "vgg16", "--ph", 10, "--pe", 5, "--pga", 2, "-o", tmp_path)
        assert result.exit_code == 3
        assert "Search failed" in result.output
