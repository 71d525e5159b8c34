"""Model specifications, initialization and forward passes.

Every architecture ends in the same head: two ReLU hidden layers of width H
followed by a linear layer of width K whose outputs feed softmax.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from core import InvalidSpec, ShapeMismatch
from geo import FeatureSegment, stack_segments

from .ops import conv1d_forward, conv1d_output_length, dense_forward, dropout, relu, softmax
from .params import ParamSet
from .recurrent import GRU_GATES, LSTM_GATES, run_gru, run_lstm
from .tensor import Tensor, check_finite, parameter

LSTM_FORGET_BIAS = 1.0
HEAD_LAYERS = ("head.0", "head.1")


class Architecture(str, Enum):
    LSTM = "LSTM"
    GRU = "GRU"
    CNN1D = "CNN1D"
    MLP = "MLP"


BASE_ARCHITECTURES: tuple[Architecture, ...] = (Architecture.LSTM, Architecture.GRU, Architecture.CNN1D)


@dataclass(frozen=True)
class ModelSpec:
    architecture: Architecture
    channels: int = 4
    seq_len: int = 10
    hidden_size: int = 64
    n_classes: int = 4
    cnn_filters: int = 32
    cnn_kernel: int = 3
    cnn_layers: int = 2
    dropout: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "architecture", Architecture(self.architecture))

    def validate(self) -> ModelSpec:
        for name in ("channels", "seq_len", "hidden_size", "cnn_filters", "cnn_kernel", "cnn_layers"):
            if getattr(self, name) < 1:
                raise InvalidSpec(f"{name} must be positive", operation="build_model")
        if self.n_classes < 2:
            raise InvalidSpec("n_classes must be at least 2", operation="build_model")
        if not 0.0 <= self.dropout < 1.0:
            raise InvalidSpec("dropout must be in [0, 1)", operation="build_model")
        if self.architecture is Architecture.CNN1D and self.conv_output_length() < 1:
            raise InvalidSpec(
                f"{self.cnn_layers} conv layers of width {self.cnn_kernel} do not fit length {self.seq_len}",
                operation="build_model",
            )
        return self

    def conv_output_length(self) -> int:
        length = self.seq_len
        for _ in range(self.cnn_layers):
            length = conv1d_output_length(length, self.cnn_kernel, 1)
        return length

    def head_input_width(self) -> int:
        if self.architecture is Architecture.MLP:
            return self.channels * self.seq_len
        if self.architecture is Architecture.CNN1D:
            return self.cnn_filters * self.conv_output_length()
        return self.hidden_size

    def with_overrides(self, **changes: object) -> ModelSpec:
        return replace(self, **changes)

    def to_dict(self) -> dict[str, object]:
        data = asdict(self)
        data["architecture"] = self.architecture.value
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> ModelSpec:
        return cls(**dict(data))


def _glorot(rng: np.random.Generator, shape: tuple[int, ...], fan_in: int, fan_out: int) -> np.ndarray:
    s = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-s, s, size=shape)


def build_model(spec: ModelSpec, rng_seed: int) -> ParamSet:
    """Glorot-uniform weights, zero biases (LSTM forget bias 1.0); deterministic per seed."""
    spec.validate()
    rng = np.random.default_rng(rng_seed)
    params: list[tuple[str, np.ndarray]] = []
    h = spec.hidden_size

    if spec.architecture in (Architecture.LSTM, Architecture.GRU):
        prefix = spec.architecture.value.lower()
        gates = LSTM_GATES if spec.architecture is Architecture.LSTM else GRU_GATES
        for gate in gates:
            params.append((f"{prefix}.W_{gate}", _glorot(rng, (spec.channels, h), spec.channels, h)))
        for gate in gates:
            params.append((f"{prefix}.U_{gate}", _glorot(rng, (h, h), h, h)))
        for gate in gates:
            bias = np.full(h, LSTM_FORGET_BIAS) if (prefix == "lstm" and gate == "f") else np.zeros(h)
            params.append((f"{prefix}.b_{gate}", bias))
    elif spec.architecture is Architecture.CNN1D:
        in_channels = spec.channels
        for layer in range(spec.cnn_layers):
            shape = (spec.cnn_filters, in_channels, spec.cnn_kernel)
            params.append((f"conv.{layer}.kernel", _glorot(rng, shape, in_channels * spec.cnn_kernel,
                                                            spec.cnn_filters * spec.cnn_kernel)))
            params.append((f"conv.{layer}.bias", np.zeros(spec.cnn_filters)))
            in_channels = spec.cnn_filters

    width = spec.head_input_width()
    for name in HEAD_LAYERS:
        params.append((f"{name}.W", _glorot(rng, (width, h), width, h)))
        params.append((f"{name}.b", np.zeros(h)))
        width = h
    params.append(("out.W", _glorot(rng, (h, spec.n_classes), h, spec.n_classes)))
    params.append(("out.b", np.zeros(spec.n_classes)))
    return ParamSet(params)


def as_batch(batch: Sequence[FeatureSegment] | np.ndarray, spec: ModelSpec) -> np.ndarray:
    """Coerce segments or an array into a (batch, C, L) float64 array."""
    x = stack_segments(batch)[0] if not isinstance(batch, np.ndarray) else np.asarray(batch, dtype=np.float64)
    if x.ndim == 2 and spec.seq_len == 1:
        x = x[:, :, None]
    if x.ndim != 3 or x.shape[1:] != (spec.channels, spec.seq_len):
        raise ShapeMismatch(
            f"batch of shape {x.shape} does not conform to C={spec.channels}, L={spec.seq_len}",
            operation="forward_model",
        )
    return x


def leaves(params: ParamSet, *, requires_grad: bool) -> dict[str, Tensor]:
    if requires_grad:
        return {name: parameter(value) for name, value in params.items()}
    return {name: Tensor(value) for name, value in params.items()}


def model_logits(
    tensors: Mapping[str, Tensor],
    spec: ModelSpec,
    x: np.ndarray,
    *,
    rng: np.random.Generator | None = None,
) -> Tensor:
    """Logits for a conforming batch; dropout is active only when rng is given."""
    inp = Tensor(x)
    if spec.architecture is Architecture.MLP:
        features = inp.reshape(x.shape[0], spec.channels * spec.seq_len)
    elif spec.architecture is Architecture.LSTM:
        cell = {name.split(".", 1)[1]: t for name, t in tensors.items() if name.startswith("lstm.")}
        features = run_lstm(inp, cell, spec.hidden_size)
    elif spec.architecture is Architecture.GRU:
        cell = {name.split(".", 1)[1]: t for name, t in tensors.items() if name.startswith("gru.")}
        features = run_gru(inp, cell, spec.hidden_size)
    else:
        features = inp
        for layer in range(spec.cnn_layers):
            features = relu(conv1d_forward(features, tensors[f"conv.{layer}.kernel"], tensors[f"conv.{layer}.bias"]))
        features = features.reshape(x.shape[0], spec.head_input_width())

    for name in HEAD_LAYERS:
        features = relu(dense_forward(features, tensors[f"{name}.W"], tensors[f"{name}.b"]))
        features = dropout(features, spec.dropout, rng)
    return dense_forward(features, tensors["out.W"], tensors["out.b"])


def forward_model(
    params: ParamSet,
    spec: ModelSpec,
    batch: Sequence[FeatureSegment] | np.ndarray,
) -> Tensor:
    """Class-probability rows (batch x K) for inference."""
    x = as_batch(batch, spec)
    probs = softmax(model_logits(leaves(params, requires_grad=False), spec, x))
    check_finite(probs.data, "forward_model")
    return probs


def predict_proba(params: ParamSet, spec: ModelSpec, batch: Sequence[FeatureSegment] | np.ndarray) -> np.ndarray:
    return forward_model(params, spec, batch).data
