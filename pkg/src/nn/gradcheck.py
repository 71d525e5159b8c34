"""Central finite-difference check of end-to-end model gradients."""

from __future__ import annotations

import numpy as np

from core import InvalidSpec

from .models import Architecture, ModelSpec, build_model
from .params import ParamSet
from .training import loss_and_grads

GRADCHECK_STEP = 1e-5
GRADCHECK_THRESHOLD = 1e-4
# Below this magnitude, differences are judged on an absolute scale.
GRADIENT_FLOOR = 1e-5

MAX_HIDDEN = 8
MAX_SEQ_LEN = 6
MAX_BATCH = 4


def small_spec(architecture: Architecture | str) -> ModelSpec:
    """A spec small enough to finite-difference every coordinate quickly."""
    return ModelSpec(
        architecture=Architecture(architecture),
        channels=3,
        seq_len=6,
        hidden_size=5,
        n_classes=3,
        cnn_filters=3,
        cnn_kernel=3,
    )


def grad_check(
    spec: ModelSpec,
    rng_seed: int,
    *,
    batch_size: int = 3,
    step: float = GRADCHECK_STEP,
) -> float:
    """Max relative error between autodiff and central differences over all coordinates."""
    if spec.hidden_size > MAX_HIDDEN or spec.seq_len > MAX_SEQ_LEN or batch_size > MAX_BATCH:
        raise InvalidSpec(
            f"grad_check needs H <= {MAX_HIDDEN}, L <= {MAX_SEQ_LEN}, batch <= {MAX_BATCH}",
            operation="grad_check",
        )
    spec = spec.with_overrides(dropout=0.0)
    rng = np.random.default_rng(rng_seed)
    params = build_model(spec, int(rng.integers(0, 2**32)))
    # Nonzero biases keep the check away from the all-zero special case.
    params = params.map(lambda a: a + 0.1 * rng.standard_normal(a.shape))
    x = rng.standard_normal((batch_size, spec.channels, spec.seq_len))
    y = rng.integers(0, spec.n_classes, size=batch_size)

    _, analytic = loss_and_grads(params, spec, x, y)
    layout = params.layout()
    flat = params.flatten()
    grad_flat = np.concatenate([analytic[name].ravel() for name, _ in layout])

    worst = 0.0
    for i in range(flat.size):
        plus = flat.copy()
        plus[i] += step
        minus = flat.copy()
        minus[i] -= step
        loss_plus, _ = loss_and_grads(ParamSet.from_flat(layout, plus), spec, x, y)
        loss_minus, _ = loss_and_grads(ParamSet.from_flat(layout, minus), spec, x, y)
        numeric = (loss_plus - loss_minus) / (2 * step)
        denom = max(abs(numeric), abs(grad_flat[i]), GRADIENT_FLOOR)
        worst = max(worst, abs(numeric - grad_flat[i]) / denom)
    return worst
