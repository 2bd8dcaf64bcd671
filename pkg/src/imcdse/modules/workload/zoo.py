"""Workload descriptors built from published layer shapes.

CNNs and ViT take 224x224 RGB inputs; MobileBERT runs 128 tokens and GPT-2
Medium 1024 tokens. Only layers that carry weights or explicit MACs are
listed: pooling, normalization, activations and embedding lookups are not
modelled. Attention score and context products appear as weightless
``attention`` layers with MACs = 2·tokens²·d_model.
"""

from __future__ import annotations

from collections.abc import Callable

from imcdse.modules.workload.models import LayerSpec, Workload


def conv(name: str, c_in: int, c_out: int, k: int, in_hw: int, out_hw: int) -> LayerSpec:
    """Standard convolution lowered to a (k²·c_in) x c_out matrix."""
    return LayerSpec(
        name=name,
        kind="conv",
        fan_in=k * k * c_in,
        fan_out=c_out,
        in_activations=c_in * in_hw * in_hw,
        out_activations=c_out * out_hw * out_hw,
    )


def dwconv(name: str, channels: int, k: int, in_hw: int, out_hw: int) -> LayerSpec:
    """Depthwise convolution: k² weights per channel."""
    return LayerSpec(
        name=name,
        kind="depthwise_conv",
        fan_in=k * k,
        fan_out=channels,
        in_activations=channels * in_hw * in_hw,
        out_activations=channels * out_hw * out_hw,
    )


def fc(name: str, fan_in: int, fan_out: int, tokens: int = 1) -> LayerSpec:
    """Fully connected layer applied to ``tokens`` input vectors."""
    return LayerSpec(
        name=name,
        kind="fc",
        fan_in=fan_in,
        fan_out=fan_out,
        in_activations=fan_in * tokens,
        out_activations=fan_out * tokens,
    )


def attention(name: str, d_model: int, tokens: int) -> LayerSpec:
    """Score and context products of one attention block (no stored weights)."""
    return LayerSpec(
        name=name,
        kind="attention",
        fan_in=0,
        fan_out=0,
        macs=2 * tokens * tokens * d_model,
        in_activations=3 * tokens * d_model,
        out_activations=tokens * d_model,
    )


def vgg16() -> Workload:
    """VGG16; fc6 holds 25088x4096 weights."""
    stages = [(64, 2, 224), (128, 2, 112), (256, 3, 56), (512, 3, 28), (512, 3, 14)]
    layers = []
    c_in = 3
    for stage, (c_out, repeats, hw) in enumerate(stages, start=1):
        for i in range(1, repeats + 1):
            layers.append(conv(f"conv{stage}_{i}", c_in, c_out, 3, hw, hw))
            c_in = c_out
    layers += [fc("fc6", 512 * 7 * 7, 4096), fc("fc7", 4096, 4096), fc("fc8", 4096, 1000)]
    return Workload(name="vgg16", layers=tuple(layers))


def alexnet() -> Workload:
    """AlexNet (single-tower variant)."""
    layers = (
        conv("conv1", 3, 64, 11, 224, 55),
        conv("conv2", 64, 192, 5, 27, 27),
        conv("conv3", 192, 384, 3, 13, 13),
        conv("conv4", 384, 256, 3, 13, 13),
        conv("conv5", 256, 256, 3, 13, 13),
        fc("fc6", 256 * 6 * 6, 4096),
        fc("fc7", 4096, 4096),
        fc("fc8", 4096, 1000),
    )
    return Workload(name="alexnet", layers=layers)


def resnet18() -> Workload:
    """ResNet18 with basic blocks."""
    layers = [conv("conv1", 3, 64, 7, 224, 112)]
    c_in, hw = 64, 56
    for stage, c_out in enumerate((64, 128, 256, 512), start=1):
        for block in range(2):
            stride = 2 if stage > 1 and block == 0 else 1
            out_hw = hw // stride
            prefix = f"layer{stage}_{block}"
            layers.append(conv(f"{prefix}_conv1", c_in, c_out, 3, hw, out_hw))
            layers.append(conv(f"{prefix}_conv2", c_out, c_out, 3, out_hw, out_hw))
            if stride != 1 or c_in != c_out:
                layers.append(conv(f"{prefix}_down", c_in, c_out, 1, hw, out_hw))
            c_in, hw = c_out, out_hw
    layers.append(fc("fc", 512, 1000))
    return Workload(name="resnet18", layers=tuple(layers))


def resnet50() -> Workload:
    """ResNet50 with bottleneck blocks (stride on the 3x3 conv)."""
    layers = [conv("conv1", 3, 64, 7, 224, 112)]
    c_in, hw = 64, 56
    for stage, (width, blocks) in enumerate(((64, 3), (128, 4), (256, 6), (512, 3)), start=1):
        c_out = 4 * width
        for block in range(blocks):
            stride = 2 if stage > 1 and block == 0 else 1
            out_hw = hw // stride
            prefix = f"layer{stage}_{block}"
            layers.append(conv(f"{prefix}_conv1", c_in, width, 1, hw, hw))
            layers.append(conv(f"{prefix}_conv2", width, width, 3, hw, out_hw))
            layers.append(conv(f"{prefix}_conv3", width, c_out, 1, out_hw, out_hw))
            if block == 0:
                layers.append(conv(f"{prefix}_down", c_in, c_out, 1, hw, out_hw))
            c_in, hw = c_out, out_hw
    layers.append(fc("fc", 2048, 1000))
    return Workload(name="resnet50", layers=tuple(layers))


def _make_divisible(value: int, divisor: int = 8) -> int:
    rounded = max(divisor, (value + divisor // 2) // divisor * divisor)
    if rounded < 0.9 * value:
        rounded += divisor
    return rounded


# (kernel, expanded channels, output channels, squeeze-excite, stride)
_MOBILENETV3_LARGE = (
    (3, 16, 16, False, 1),
    (3, 64, 24, False, 2),
    (3, 72, 24, False, 1),
    (5, 72, 40, True, 2),
    (5, 120, 40, True, 1),
    (5, 120, 40, True, 1),
    (3, 240, 80, False, 2),
    (3, 200, 80, False, 1),
    (3, 184, 80, False, 1),
    (3, 184, 80, False, 1),
    (3, 480, 112, True, 1),
    (3, 672, 112, True, 1),
    (5, 672, 160, True, 2),
    (5, 960, 160, True, 1),
    (5, 960, 160, True, 1),
)


def mobilenetv3() -> Workload:
    """MobileNetV3-Large."""
    layers = [conv("stem", 3, 16, 3, 224, 112)]
    c_in, hw = 16, 112
    for i, (k, expanded, c_out, squeeze, stride) in enumerate(_MOBILENETV3_LARGE):
        out_hw = hw // stride
        if expanded != c_in:
            layers.append(conv(f"block{i}_expand", c_in, expanded, 1, hw, hw))
        layers.append(dwconv(f"block{i}_dw", expanded, k, hw, out_hw))
        if squeeze:
            reduced = _make_divisible(expanded // 4)
            layers.append(fc(f"block{i}_se_reduce", expanded, reduced))
            layers.append(fc(f"block{i}_se_expand", reduced, expanded))
        layers.append(conv(f"block{i}_project", expanded, c_out, 1, out_hw, out_hw))
        c_in, hw = c_out, out_hw
    layers += [conv("head", 160, 960, 1, 7, 7), fc("fc1", 960, 1280), fc("fc2", 1280, 1000)]
    return Workload(name="mobilenetv3", layers=tuple(layers))


def densenet201() -> Workload:
    """DenseNet201: growth rate 32, bottleneck width 128, blocks (6, 12, 48, 32)."""
    growth, bottleneck = 32, 4 * 32
    layers = [conv("conv0", 3, 64, 7, 224, 112)]
    channels, hw = 64, 56
    for block, repeats in enumerate((6, 12, 48, 32), start=1):
        for i in range(repeats):
            prefix = f"dense{block}_{i}"
            layers.append(conv(f"{prefix}_conv1", channels, bottleneck, 1, hw, hw))
            layers.append(conv(f"{prefix}_conv2", bottleneck, growth, 3, hw, hw))
            channels += growth
        if block < 4:
            layers.append(conv(f"transition{block}", channels, channels // 2, 1, hw, hw))
            channels, hw = channels // 2, hw // 2
    layers.append(fc("fc", channels, 1000))
    return Workload(name="densenet201", layers=tuple(layers))


def _encoder_block(prefix: str, d_model: int, d_ff: int, tokens: int) -> list[LayerSpec]:
    return [
        fc(f"{prefix}_qkv", d_model, 3 * d_model, tokens),
        attention(f"{prefix}_attn", d_model, tokens),
        fc(f"{prefix}_proj", d_model, d_model, tokens),
        fc(f"{prefix}_ffn1", d_model, d_ff, tokens),
        fc(f"{prefix}_ffn2", d_ff, d_model, tokens),
    ]


def vit() -> Workload:
    """ViT-B/16: 196 patches plus the class token."""
    tokens, d_model = 197, 768
    layers = [conv("patch_embed", 3, d_model, 16, 224, 14)]
    for i in range(12):
        layers += _encoder_block(f"block{i}", d_model, 4 * d_model, tokens)
    layers.append(fc("head", d_model, 1000))
    return Workload(name="vit", layers=tuple(layers))


def mobilebert() -> Workload:
    """MobileBERT: 24 bottlenecked layers, 4 stacked FFNs each, 128 tokens."""
    tokens, hidden, inner, ffn = 128, 512, 128, 512
    layers = [fc("embedding_transform", 3 * inner, hidden, tokens)]
    for i in range(24):
        prefix = f"layer{i}"
        layers += [
            fc(f"{prefix}_bottleneck_in", hidden, inner, tokens),
            fc(f"{prefix}_query", inner, inner, tokens),
            fc(f"{prefix}_key", inner, inner, tokens),
            fc(f"{prefix}_value", hidden, inner, tokens),
            attention(f"{prefix}_attn", inner, tokens),
            fc(f"{prefix}_attn_out", inner, inner, tokens),
        ]
        for j in range(4):
            layers += [
                fc(f"{prefix}_ffn{j}_in", inner, ffn, tokens),
                fc(f"{prefix}_ffn{j}_out", ffn, inner, tokens),
            ]
        layers.append(fc(f"{prefix}_bottleneck_out", inner, hidden, tokens))
    return Workload(name="mobilebert", layers=tuple(layers))


def gpt2_medium() -> Workload:
    """GPT-2 Medium over a 1024-token context; lm_head holds 1024x50257 weights."""
    tokens, d_model = 1024, 1024
    layers = []
    for i in range(24):
        layers += _encoder_block(f"h{i}", d_model, 4 * d_model, tokens)
    layers.append(fc("lm_head", d_model, 50257, tokens))
    return Workload(name="gpt2-medium", layers=tuple(layers))


ZOO: dict[str, Callable[[], Workload]] = {
    "alexnet": alexnet,
    "densenet201": densenet201,
    "gpt2-medium": gpt2_medium,
    "mobilebert": mobilebert,
    "mobilenetv3": mobilenetv3,
    "resnet18": resnet18,
    "resnet50": resnet50,
    "vgg16": vgg16,
    "vit": vit,
}
