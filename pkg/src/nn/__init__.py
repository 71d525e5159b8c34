"""From-scratch reverse-mode neural networks: layers, recurrent cells, Adam, training."""

from .checkpoint import decode_checkpoint, encode_checkpoint, load_checkpoint, save_checkpoint
from .gradcheck import GRADCHECK_THRESHOLD, grad_check, small_spec
from .models import (
    BASE_ARCHITECTURES,
    Architecture,
    ModelSpec,
    build_model,
    forward_model,
    predict_proba,
)
from .ops import (
    conv1d_forward,
    cross_entropy_loss,
    dense_forward,
    dropout,
    one_hot,
    relu,
    sigmoid,
    softmax,
    softmax_cross_entropy,
    tanh,
)
from .optim import AdamState, adam_step
from .params import ParamSet
from .recurrent import gru_cell, lstm_cell
from .tensor import Tensor, parameter
from .training import evaluate_model, loss_and_grads, train_local

__all__ = [
    "BASE_ARCHITECTURES",
    "GRADCHECK_THRESHOLD",
    "AdamState",
    "Architecture",
    "ModelSpec",
    "ParamSet",
    "Tensor",
    "adam_step",
    "build_model",
    "conv1d_forward",
    "cross_entropy_loss",
    "decode_checkpoint",
    "dense_forward",
    "dropout",
    "encode_checkpoint",
    "evaluate_model",
    "forward_model",
    "grad_check",
    "gru_cell",
    "load_checkpoint",
    "loss_and_grads",
    "lstm_cell",
    "one_hot",
    "parameter",
    "predict_proba",
    "relu",
    "save_checkpoint",
    "sigmoid",
    "small_spec",
    "softmax",
    "softmax_cross_entropy",
    "tanh",
    "train_local",
]
