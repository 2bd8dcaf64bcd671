"""Tests for workload descriptors, loading, the model zoo and footprint arithmetic."""

import json

import pytest
from pydantic import ValidationError

from imcdse.modules.workload import (
    WORKLOAD_SETS,
    ZOO,
    LayerSpec,
    UnknownGeneratorError,
    UnknownWorkloadError,
    Workload,
    WorkloadParseError,
    WorkloadSchemaError,
    generate_synthetic,
    largest_layer_cells,
    largest_workload,
    load_workloads,
    required_cells,
    resolve_workloads,
)
from imcdse.presets import get_preset


def _fc(name, fan_in, fan_out, **extra):
    return LayerSpec(
        name=name,
        kind="fc",
        fan_in=fan_in,
        fan_out=fan_out,
        in_activations=fan_in,
        out_activations=fan_out,
        **extra,
    )


def _workload(*layers, name="w"):
    return Workload(name=name, layers=tuple(layers))


class TestLayerSpec:
    def test_weight_count(self):
        assert _fc("fc", 100, 10).weight_count == 1000

    def test_macs_default(self):
        layer = LayerSpec(name="c", kind="conv", fan_in=27, fan_out=8, in_activations=3 * 16, out_activations=8 * 16)
        assert layer.macs == 27 * 8 * 16

    def test_weightless_layer(self):
        layer = LayerSpec(
            name="attn", kind="attention", fan_in=0, fan_out=0, macs=500, in_activations=30, out_activations=10
        )
        assert layer.weight_count == 0

    def test_half_weighted_rejected(self):
        with pytest.raises(ValidationError, match="both be zero"):
            LayerSpec(name="x", kind="fc", fan_in=0, fan_out=4, macs=1, in_activations=1, out_activations=4)

    def test_macs_below_weights_rejected(self):
        with pytest.raises(ValidationError, match="below weight count"):
            _fc("fc", 100, 10, macs=10)

    def test_negative_counts_rejected(self):
        with pytest.raises(ValidationError):
            _fc("fc", -1, 10)


class TestWorkload:
    def test_empty_layers_rejected(self):
        with pytest.raises(ValidationError, match="at least one layer"):
            Workload(name="w", layers=())

    def test_duplicate_layer_names_rejected(self):
        with pytest.raises(ValidationError, match="duplicate"):
            _workload(_fc("a", 2, 2), _fc("a", 2, 2))

    def test_totals(self):
        w = _workload(_fc("a", 100, 10), _fc("b", 10, 5))
        assert w.weight_count == 1050
        assert w.total_macs == 1050


class TestLoadWorkloads:
    def test_one_fc_layer(self, tmp_path):
        path = tmp_path / "w.json"
        doc = {
            "name": "tiny",
            "layers": [
                {"name": "fc", "kind": "fc", "fan_in": 100, "fan_out": 10, "weight_bits": 8,
                 "in_activations": 100, "out_activations": 10}
            ],
        }
        path.write_text(json.dumps(doc))
        (workload,) = load_workloads(path)
        assert workload.layers[0].weight_count == 1000

    def test_array_keeps_file_order(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text(json.dumps([json.loads(_workload(_fc("a", 2, 2), name=n).to_json()) for n in "ba"]))
        assert [w.name for w in load_workloads(path)] == ["b", "a"]

    def test_empty_layer_list(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text('{"name": "empty", "layers": []}')
        with pytest.raises(WorkloadSchemaError):
            load_workloads(path)

    def test_negative_count(self, tmp_path):
        path = tmp_path / "w.json"
        doc = {"name": "neg", "layers": [{"name": "fc", "kind": "fc", "fan_in": -5, "fan_out": 10,
                                           "in_activations": 1, "out_activations": 1}]}
        path.write_text(json.dumps(doc))
        with pytest.raises(WorkloadSchemaError, match="fan_in"):
            load_workloads(path)

    def test_parse_error_reports_line(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text('{\n  "name": "x",\n  layers\n}')
        with pytest.raises(WorkloadParseError, match="line 3"):
            load_workloads(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_workloads(tmp_path / "missing.json")


class TestRequiredCells:
    @pytest.mark.parametrize(("bits_per_cell", "expected"), [(2, 4000), (8, 1000), (3, 3000)])
    def test_ceiling_per_weight(self, bits_per_cell, expected):
        assert required_cells(_workload(_fc("fc", 100, 10)), bits_per_cell) == expected

    def test_weight_bits_override(self):
        assert required_cells(_workload(_fc("fc", 100, 10)), 1, weight_bits=4) == 4000

    def test_monotone_in_bits_per_cell(self):
        w = ZOO["resnet18"]()
        cells = [required_cells(w, b) for b in range(1, 9)]
        assert cells == sorted(cells, reverse=True)
        assert cells[-1] == w.weight_count


class TestLargestLayer:
    def test_max_over_layers(self):
        w = _workload(_fc("a", 2, 5), _fc("b", 4, 5), _fc("c", 3, 5))
        assert largest_layer_cells(w, 8) == 20

    def test_single_layer(self):
        assert largest_layer_cells(_workload(_fc("a", 3, 7)), 8) == 21

    def test_vgg16_fc6_footprint(self):
        cells = largest_layer_cells(ZOO["vgg16"](), 1)
        assert cells == 25088 * 4096 * 8
        assert cells == pytest.approx(8.2e8, rel=0.01)

    def test_gpt2_lm_head_footprint(self):
        assert largest_layer_cells(ZOO["gpt2-medium"](), 1) == pytest.approx(4.1e8, rel=0.01)

    @pytest.mark.parametrize("mode", ["weight_stationary", "weight_swapping"])
    def test_vgg16_largest_of_default_set(self, mode):
        workloads = resolve_workloads(["default"])
        assert largest_workload(workloads, mode).name == "vgg16"


class TestSynthetic:
    def test_mlp_scale_one(self):
        w = generate_synthetic("mlp", 1, 5)
        assert len(w.layers) == 1
        assert w.layers[0].kind == "fc"

    def test_deterministic(self):
        assert generate_synthetic("convstack", 4, 3) == generate_synthetic("convstack", 4, 3)

    def test_convstack_hand_computed(self):
        # seed 7: base width 4, channels 32 -> 64 -> 128 -> 256, 3x3 kernels
        w = generate_synthetic("convstack", 3, 7)
        assert w.weight_count == 288 * 64 + 576 * 128 + 1152 * 256 == 387_072

    def test_convstack_macs_use_spatial_positions(self):
        layer = generate_synthetic("convstack", 1, 0).layers[0]
        assert layer.macs == layer.weight_count * 32 * 32

    def test_unknown_kind(self):
        with pytest.raises(UnknownGeneratorError):
            generate_synthetic("transformer", 1, 0)

    def test_scale_below_one(self):
        with pytest.raises(WorkloadSchemaError):
            generate_synthetic("mlp", 0, 0)


class TestZoo:
    def test_vgg16_weights(self):
        assert ZOO["vgg16"]().weight_count == 138_344_128

    def test_resnet18_weights(self):
        assert ZOO["resnet18"]().weight_count == 11_678_912

    def test_alexnet_weights(self):
        assert ZOO["alexnet"]().weight_count == 61_090_496

    def test_bundled_vgg16_matches_zoo(self):
        (bundled,) = Workload.list_from_json(get_preset("workloads", "vgg16"))
        assert bundled == ZOO["vgg16"]()

    @pytest.mark.parametrize("name", sorted(ZOO))
    def test_every_model_valid(self, name):
        w = ZOO[name]()
        assert w.name == name
        assert w.total_macs >= w.weight_count > 0

    def test_transformers_have_weightless_attention(self):
        layers = ZOO["vit"]().layers
        assert any(layer.kind == "attention" and layer.weight_count == 0 for layer in layers)


class TestResolveWorkloads:
    def test_sets(self):
        assert [w.name for w in resolve_workloads(["default"])] == list(WORKLOAD_SETS["default"])
        assert len(resolve_workloads(["nine"])) == 9

    def test_duplicates_dropped(self):
        assert [w.name for w in resolve_workloads(["vgg16", "default"])] == [
            "vgg16",
            "resnet18",
            "alexnet",
            "mobilenetv3",
        ]

    def test_file_reference(self, tmp_path):
        path = tmp_path / "mine.json"
        path.write_text(generate_synthetic("mlp", 2, 0).to_json())
        assert resolve_workloads([str(path)])[0].name == "mlp-2-0"

    def test_unknown(self):
        with pytest.raises(UnknownWorkloadError, match="known"):
            resolve_workloads(["lenet"])
