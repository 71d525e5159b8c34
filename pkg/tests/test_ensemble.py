import numpy as np
import numpy.testing as npt
import pytest

from core import EmptyDataset, EmptyEvaluation, EnsembleError, LengthMismatch, MissingMeta, ShapeMismatch
from ensemble import (
    ENSEMBLE_ORDER,
    ROW_NAMES,
    Combiner,
    EnsembleModel,
    StackedFeatures,
    base_probabilities,
    build_ensembles,
    collect_base_predictions,
    evaluate_accuracy,
    evaluate_ensembles,
    majority_vote_labels,
    meta_spec,
    soft_average_labels,
    train_meta_learner,
)
from ensemble.voting import unanimous_labels
from nn import ModelSpec, build_model, evaluate_model

from conftest import make_segments

K = 4


def _base(seed=0):
    specs = {arch: ModelSpec(architecture=arch, hidden_size=6, cnn_filters=4) for arch in ENSEMBLE_ORDER}
    globals_ = {arch: build_model(specs[arch], seed + i) for i, arch in enumerate(ENSEMBLE_ORDER)}
    return specs, globals_


def _identical_base():
    spec = ModelSpec(architecture="LSTM", hidden_size=6)
    params = build_model(spec, 4)
    return {a: spec for a in ENSEMBLE_ORDER}, {a: params for a in ENSEMBLE_ORDER}


def _meta(hidden=6, **arrays):
    return build_model(meta_spec(K, hidden), 0).replace(**arrays)


def _copy_first_block_meta(hidden=6):
    w0 = np.zeros((3 * K, hidden))
    w0[:K, :K] = np.eye(K)
    w1 = np.zeros((hidden, hidden))
    w1[:K, :K] = np.eye(K)
    out = np.zeros((hidden, K))
    out[:K, :K] = np.eye(K)
    return _meta(hidden, **{
        "head.0.W": w0, "head.0.b": np.zeros(hidden),
        "head.1.W": w1, "head.1.b": np.zeros(hidden),
        "out.W": out, "out.b": np.zeros(K),
    })


def _constant_meta(label, hidden=6):
    bias = np.zeros(K)
    bias[label] = 5.0
    return _meta(hidden, **{
        "head.0.W": np.zeros((3 * K, hidden)), "head.1.W": np.zeros((hidden, hidden)),
        "out.W": np.zeros((hidden, K)), "out.b": bias,
    })


def test_stacked_features_shape_and_blocks():
    specs, globals_ = _base()
    segments = make_segments(5)
    stacked = collect_base_predictions(globals_, specs, segments)
    assert stacked.features.shape == (20, 12)
    for i in range(3):
        npt.assert_allclose(stacked.block(i).sum(axis=1), 1.0, atol=1e-9)
    assert stacked.labels.tolist() == [s.label.index for s in segments]


def test_identical_base_models_give_identical_blocks():
    specs, globals_ = _identical_base()
    stacked = collect_base_predictions(globals_, specs, make_segments(3))
    npt.assert_array_equal(stacked.block(0), stacked.block(1))
    npt.assert_array_equal(stacked.block(0), stacked.block(2))


def test_missing_base_model():
    specs, globals_ = _base()
    del globals_["GRU"]
    with pytest.raises(ShapeMismatch):
        base_probabilities(globals_, specs, make_segments(1))


def test_meta_learner_copying_lstm_block_predicts_lstm_argmax():
    specs, globals_ = _base(seed=3)
    segments = make_segments(10)
    model = EnsembleModel(Combiner.STACKED_MLP, specs, globals_, meta=_copy_first_block_meta())
    lstm_labels = np.argmax(base_probabilities(globals_, specs, segments)[0], axis=1)
    npt.assert_array_equal(model.predict(segments), lstm_labels)


def test_stacked_prediction_range_and_single_segment():
    specs, globals_ = _base()
    model = EnsembleModel(Combiner.STACKED_MLP, specs, globals_, meta=_meta())
    labels = model.predict(make_segments(6))
    assert labels.shape == (24,)
    assert labels.min() >= 0 and labels.max() < K
    assert model.predict(make_segments(1)[:1]).shape == (1,)


def test_unanimous_base_labels_override_meta():
    specs, globals_ = _base(seed=5)
    segments = make_segments(10, spread=1.0)
    probs = base_probabilities(globals_, specs, segments)
    agreed = unanimous_labels(probs)
    model = EnsembleModel(Combiner.STACKED_MLP, specs, globals_, meta=_constant_meta(3))
    npt.assert_array_equal(model.predict(segments), np.where(agreed >= 0, agreed, 3))


def test_identical_base_models_decide_every_combiner():
    specs, globals_ = _identical_base()
    segments = make_segments(5)
    single = np.argmax(base_probabilities(globals_, specs, segments)[0], axis=1)
    for combiner, meta in ((Combiner.STACKED_MLP, _constant_meta(0)), (Combiner.SOFT_AVERAGE, None),
                           (Combiner.MAJORITY_VOTE, None)):
        model = EnsembleModel(combiner, specs, globals_, meta=meta)
        npt.assert_array_equal(model.predict(segments), single)


def test_soft_average_examples():
    probs = [np.array([[0.6, 0.4]]), np.array([[0.2, 0.8]]), np.array([[0.4, 0.6]])]
    assert soft_average_labels(probs).tolist() == [1]
    assert soft_average_labels([2.0 * p for p in probs]).tolist() == [1]
    tie = [np.array([[0.5, 0.5]])] * 3
    assert soft_average_labels(tie).tolist() == [0]


def test_majority_vote_examples():
    def row(label, weight=0.7):
        p = np.full(K, (1.0 - weight) / (K - 1))
        p[label] = weight
        return p[None, :]

    assert majority_vote_labels([row(2), row(2), row(0)]).tolist() == [2]
    assert majority_vote_labels([row(1), row(1), row(1)]).tolist() == [1]
    distinct = [
        np.array([[0.5, 0.3, 0.2, 0.0]]),
        np.array([[0.1, 0.6, 0.3, 0.0]]),
        np.array([[0.2, 0.35, 0.45, 0.0]]),
    ]
    assert majority_vote_labels(distinct).tolist() == [1]


def test_evaluate_accuracy():
    assert evaluate_accuracy([0, 1, 2], [0, 1, 2]) == 1.0
    assert evaluate_accuracy([1, 2, 0], [0, 1, 2]) == 0.0
    assert evaluate_accuracy([0, 1, 2, 3], [0, 1, 2, 0]) == 0.75
    with pytest.raises(LengthMismatch):
        evaluate_accuracy([0, 1], [0, 1, 2])
    with pytest.raises(EmptyEvaluation):
        evaluate_accuracy([], [])


def test_meta_presence_matches_combiner():
    specs, globals_ = _base()
    with pytest.raises(MissingMeta):
        EnsembleModel(Combiner.STACKED_MLP, specs, globals_)
    with pytest.raises(EnsembleError):
        EnsembleModel(Combiner.SOFT_AVERAGE, specs, globals_, meta=_meta())
    vote = EnsembleModel("majority_vote", specs, globals_)
    with pytest.raises(EnsembleError):
        vote.predict_proba(make_segments(1))


def _separable_stacked(n_per_class=10, seed=0):
    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(K), n_per_class)
    blocks = []
    for _ in range(3):
        logits = 3.0 * np.eye(K)[labels] + rng.standard_normal((labels.size, K))
        e = np.exp(logits - logits.max(axis=1, keepdims=True))
        blocks.append(e / e.sum(axis=1, keepdims=True))
    return StackedFeatures(np.concatenate(blocks, axis=1), labels, K)


def test_meta_learner_training():
    stacked = _separable_stacked()
    spec = meta_spec(K, 8)
    untrained = train_meta_learner(stacked, epochs=0, lr=0.001, rng_seed=2, hidden_size=8)
    assert untrained.bit_equal(build_model(spec, 2))

    trained = train_meta_learner(stacked, epochs=50, lr=0.001, rng_seed=2, hidden_size=8)
    again = train_meta_learner(stacked, epochs=50, lr=0.001, rng_seed=2, hidden_size=8)
    assert trained.bit_equal(again)
    data = (stacked.features, stacked.labels)
    assert evaluate_model(trained, spec, data)[1] < evaluate_model(untrained, spec, data)[1]


def test_meta_learner_needs_rows():
    empty = StackedFeatures(np.zeros((0, 3 * K)), np.zeros(0, dtype=np.int64), K)
    with pytest.raises(EmptyDataset):
        train_meta_learner(empty, epochs=1, lr=0.001, rng_seed=0)


def test_build_and_evaluate_ensembles():
    specs, globals_ = _base()
    test = make_segments(5)
    without_meta = build_ensembles(globals_, specs, None)
    assert list(without_meta) == [Combiner.SOFT_AVERAGE, Combiner.MAJORITY_VOTE]

    scores = evaluate_ensembles(build_ensembles(globals_, specs, _meta()), test)
    assert [s.name for s in scores] == [ROW_NAMES[c] for c in Combiner]
    by_name = {s.name: s for s in scores}
    assert by_name["efeddnn_vote"].loss is None
    assert by_name["efeddnn_softavg"].loss > 0.0
    assert all(0.0 <= s.accuracy <= 1.0 for s in scores)


@pytest.mark.parametrize("scale", [1e-3, 0.5, 7.0, 1e4])
def test_soft_average_ignores_common_rescaling(scale):
    rng = np.random.default_rng(12)
    probs = []
    for _ in range(3):
        raw = rng.uniform(0.01, 1.0, size=(50, K))
        probs.append(raw / raw.sum(axis=1, keepdims=True))
    npt.assert_array_equal(soft_average_labels([scale * p for p in probs]), soft_average_labels(probs))
