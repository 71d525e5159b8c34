import numpy as np
import numpy.testing as npt
import pytest

from core import CheckpointError, EmptyDataset, InvalidSpec, LayoutMismatch, ShapeMismatch
from nn import (
    AdamState,
    Architecture,
    ModelSpec,
    ParamSet,
    adam_step,
    build_model,
    decode_checkpoint,
    encode_checkpoint,
    evaluate_model,
    load_checkpoint,
    predict_proba,
    save_checkpoint,
    train_local,
)

from conftest import make_segments

ALL_ARCHS = list(Architecture)


def _spec(arch, **kw):
    return ModelSpec(architecture=arch, hidden_size=8, cnn_filters=4, **kw)


@pytest.mark.parametrize("arch", ALL_ARCHS)
def test_build_model_is_deterministic(arch):
    a = build_model(_spec(arch), 3)
    b = build_model(_spec(arch), 3)
    assert a.bit_equal(b)
    assert not a.bit_equal(build_model(_spec(arch), 4))
    assert a.num_parameters == build_model(_spec(arch), 99).num_parameters


def test_head_widths():
    mlp = ModelSpec(Architecture.MLP)
    assert mlp.head_input_width() == 40
    assert build_model(mlp, 0)["head.0.W"].shape == (40, 64)
    cnn = ModelSpec(Architecture.CNN1D)
    assert cnn.conv_output_length() == 6
    assert cnn.head_input_width() == 32 * 6


def test_lstm_forget_bias_starts_at_one():
    params = build_model(_spec(Architecture.LSTM), 0)
    npt.assert_array_equal(params["lstm.b_f"], 1.0)
    npt.assert_array_equal(params["lstm.b_i"], 0.0)


@pytest.mark.parametrize(
    "changes",
    [{"hidden_size": 0}, {"n_classes": 1}, {"dropout": 1.0}, {"seq_len": 4, "architecture": Architecture.CNN1D}],
)
def test_invalid_specs(changes):
    with pytest.raises(InvalidSpec):
        build_model(_spec(Architecture.MLP).with_overrides(**changes), 0)


@pytest.mark.parametrize("arch", ALL_ARCHS)
def test_probabilities_rows_sum_to_one(arch):
    spec = _spec(arch)
    rng = np.random.default_rng(1)
    x = 5.0 * rng.standard_normal((7, 4, 10))
    probs = predict_proba(build_model(spec, 2), spec, x)
    assert probs.shape == (7, 4)
    npt.assert_allclose(probs.sum(axis=1), 1.0, atol=1e-9)


@pytest.mark.parametrize("arch", ALL_ARCHS)
def test_batch_rows_are_independent(arch):
    spec = _spec(arch)
    params = build_model(spec, 5)
    rng = np.random.default_rng(6)
    x = rng.standard_normal((4, 4, 10))
    x[3] = x[0]
    probs = predict_proba(params, spec, x)
    npt.assert_allclose(probs[3], probs[0], rtol=1e-12, atol=1e-15)
    perm = np.array([2, 0, 3, 1])
    npt.assert_allclose(predict_proba(params, spec, x[perm]), probs[perm], rtol=1e-12, atol=1e-15)


def test_forward_rejects_wrong_shape():
    spec = _spec(Architecture.GRU)
    with pytest.raises(ShapeMismatch):
        predict_proba(build_model(spec, 0), spec, np.zeros((2, 3, 10)))


def test_forward_accepts_segments(separable_segments):
    spec = _spec(Architecture.CNN1D)
    probs = predict_proba(build_model(spec, 0), spec, separable_segments[:5])
    assert probs.shape == (5, 4)


def test_adam_first_step_and_zero_gradient():
    params = ParamSet({"w": np.array([0.5])})
    updated, state = adam_step(params, {"w": np.array([1.0])}, AdamState(lr=0.001))
    assert updated["w"][0] - 0.5 == pytest.approx(-0.001, rel=1e-6)
    assert state.t == 1
    npt.assert_array_equal(params["w"], [0.5])

    still, _ = adam_step(params, {"w": np.zeros(1)}, AdamState(lr=0.001))
    assert still.bit_equal(params)


def test_adam_requires_every_gradient():
    params = ParamSet({"w": np.zeros(2), "b": np.zeros(1)})
    with pytest.raises(ShapeMismatch):
        adam_step(params, {"w": np.zeros(2)}, AdamState(lr=0.1))
    with pytest.raises(ShapeMismatch):
        adam_step(params, {"w": np.zeros(3), "b": np.zeros(1)}, AdamState(lr=0.1))


def test_paramset_copies_and_layout():
    source = np.array([1.0, 2.0])
    params = ParamSet({"a": source, "b": np.zeros((2, 2))})
    source[0] = 9.0
    assert params["a"][0] == 1.0
    with pytest.raises(ValueError):
        params["a"][0] = 3.0
    assert params.layout() == (("a", (2,)), ("b", (2, 2)))
    again = ParamSet.from_flat(params.layout(), params.flatten())
    assert again.bit_equal(params)
    with pytest.raises(LayoutMismatch):
        params.check_layout(ParamSet({"a": np.zeros(3)}))
    with pytest.raises(LayoutMismatch):
        ParamSet([("a", np.zeros(1)), ("a", np.zeros(1))])


def test_train_local_zero_epochs_and_zero_lr(separable_segments):
    spec = _spec(Architecture.MLP)
    params = build_model(spec, 0)
    same, n = train_local(params, spec, separable_segments, epochs=0, batch_size=30, lr=0.01, rng_seed=1)
    assert same.bit_equal(params)
    assert n == 120
    frozen, _ = train_local(params, spec, separable_segments, epochs=2, batch_size=30, lr=0.0, rng_seed=1)
    assert frozen.bit_equal(params)


@pytest.mark.parametrize("arch", ALL_ARCHS)
def test_train_local_is_deterministic(arch, separable_segments):
    spec = _spec(arch)
    params = build_model(spec, 0)
    a, _ = train_local(params, spec, separable_segments, epochs=1, batch_size=16, lr=0.01, rng_seed=7)
    b, _ = train_local(params, spec, separable_segments, epochs=1, batch_size=16, lr=0.01, rng_seed=7)
    assert a.bit_equal(b)
    assert not a.bit_equal(params)


def test_training_lowers_loss_on_separable_toy_set():
    segments = make_segments(20, n_classes=2)
    spec = _spec(Architecture.MLP, n_classes=2)
    params = build_model(spec, 0)
    _, before = evaluate_model(params, spec, segments)
    trained, _ = train_local(params, spec, segments, epochs=10, batch_size=8, lr=0.01, rng_seed=0)
    accuracy, after = evaluate_model(trained, spec, segments)
    assert after < before
    assert accuracy >= 0.9


def test_train_and_evaluate_require_data():
    spec = _spec(Architecture.MLP)
    params = build_model(spec, 0)
    with pytest.raises(EmptyDataset):
        train_local(params, spec, [], epochs=1, batch_size=4, lr=0.01, rng_seed=0)
    with pytest.raises(EmptyDataset):
        evaluate_model(params, spec, [])


def test_evaluate_accepts_arrays(separable_segments):
    spec = _spec(Architecture.MLP)
    params = build_model(spec, 0)
    x = np.stack([s.channels for s in separable_segments])
    y = np.array([s.label.index for s in separable_segments])
    assert evaluate_model(params, spec, (x, y)) == evaluate_model(params, spec, separable_segments)


@pytest.mark.parametrize("arch", ALL_ARCHS)
def test_checkpoint_round_trip(arch, tmp_path):
    spec = _spec(arch)
    params = build_model(spec, 12)
    path = save_checkpoint(tmp_path / "nested" / "model.ckpt", params, spec, {"round": 3})
    loaded, loaded_spec, extra = load_checkpoint(path)
    assert loaded.bit_equal(params)
    assert loaded_spec == spec
    assert extra == {"round": 3}


def test_checkpoint_corruption_detected(tmp_path):
    payload = encode_checkpoint(build_model(_spec(Architecture.MLP), 0))
    with pytest.raises(CheckpointError):
        decode_checkpoint(payload[:-8])
    with pytest.raises(CheckpointError):
        decode_checkpoint(b"not a checkpoint")
    with pytest.raises(CheckpointError):
        load_checkpoint(tmp_path / "missing.ckpt")
