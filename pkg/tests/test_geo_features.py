import numpy as np
import numpy.testing as npt
import pytest

from core import ChannelMismatch, EmptyFit, NonMonotonicTime, TripTooShort
from geo import (
    CHANNEL_NAMES,
    STD_FLOOR,
    FeatureSegment,
    GpsPoint,
    ModeLabel,
    MotionFeatures,
    Normalizer,
    Trip,
    apply_normalizer,
    compute_motion_features,
    denormalize,
    fit_normalizer,
    segment_trip,
    stack_segments,
    trips_to_segments,
    vincenty_inverse,
)
from synth import generate_trip

WALK = ModeLabel(0, "walk")


def _trip(points, trip_id=1):
    return Trip(points=tuple(GpsPoint(*p) for p in points), mode=WALK, trip_id=trip_id)


def test_two_points_boundary_rules():
    trip = _trip([(0.0, 0.0, 0.0), (0.0, 0.001, 2.0)])
    feats = compute_motion_features(trip)
    step = vincenty_inverse(trip.points[0], trip.points[1])
    npt.assert_allclose(feats.distance, [step, 0.0])
    npt.assert_allclose(feats.speed, [step / 2.0, step / 2.0])
    npt.assert_array_equal(feats.acceleration, [0.0, 0.0])
    npt.assert_array_equal(feats.jerk, [0.0, 0.0])


def test_speed_acceleration_jerk_chain():
    trip = _trip([(0.0, 0.0, 0.0), (0.0, 0.001, 1.0), (0.0, 0.003, 2.0), (0.0, 0.006, 3.0)])
    feats = compute_motion_features(trip)
    s = feats.speed
    a = feats.acceleration
    npt.assert_allclose(a[:-1], np.diff(s))
    npt.assert_allclose(feats.jerk[:-1], np.diff(a))
    assert s[-1] == s[-2]
    assert a[-1] == 0.0 and feats.jerk[-1] == 0.0
    assert len(feats) == len(trip)


def test_boundary_rules_hold_for_random_trips():
    rng = np.random.default_rng(0)
    for i in range(1000):
        label = ModeLabel(i % 4, ("walk", "bike", "car", "public_transit")[i % 4])
        trip = generate_trip(label, int(rng.integers(2, 15)), rng_seed=i)
        feats = compute_motion_features(trip)
        assert feats.speed[-1] == feats.speed[-2]
        assert feats.acceleration[-1] == 0.0
        assert feats.jerk[-1] == 0.0


def test_single_point_trip_is_too_short():
    with pytest.raises(TripTooShort):
        compute_motion_features(_trip([(0.0, 0.0, 0.0)]))


def test_repeated_timestamp_rejected():
    with pytest.raises(NonMonotonicTime):
        compute_motion_features(_trip([(0.0, 0.0, 0.0), (0.0, 0.001, 1.0), (0.0, 0.002, 1.0)]))


def _features(n):
    return MotionFeatures(np.arange(n * 4, dtype=np.float64).reshape(n, 4) + 1.0)


def test_segment_counts_and_padding():
    segs = segment_trip(_features(25), WALK, 10)
    assert [s.valid_len for s in segs] == [10, 10, 5]
    assert np.all(segs[-1].channels[:, 5:] == 0.0)

    one = segment_trip(_features(10), WALK, 10)
    assert len(one) == 1 and one[0].valid_len == 10
    assert np.all(one[0].channels != 0.0)

    single = segment_trip(_features(1), WALK, 10)
    assert single[0].valid_len == 1
    assert np.all(single[0].channels[:, 1:] == 0.0)


def test_segment_concatenation_reproduces_rows():
    feats = _features(23)
    segs = segment_trip(feats, WALK, 10, source="9")
    rebuilt = np.concatenate([s.valid_columns() for s in segs], axis=1).T
    npt.assert_array_equal(rebuilt, feats.values)
    assert [s.source for s in segs] == ["9:0", "9:1", "9:2"]


def test_channel_subset_selection():
    segs = segment_trip(_features(4), WALK, 4, channels=("speed", "jerk"))
    assert segs[0].n_channels == 2
    npt.assert_array_equal(segs[0].channels[0], _features(4).speed)


def test_unknown_channel_rejected():
    with pytest.raises(ChannelMismatch):
        segment_trip(_features(4), WALK, 4, channels=("speed", "heading"))


def _segment(values, valid_len=None):
    values = np.asarray(values, dtype=np.float64)
    return FeatureSegment(channels=values, valid_len=valid_len or values.shape[1], label=WALK)


def test_fit_constant_channel_clamps_std():
    norm = fit_normalizer([_segment(np.full((1, 4), 5.0))], channel_names=("speed",))
    npt.assert_allclose(norm.mean, [5.0])
    npt.assert_allclose(norm.std, [STD_FLOOR])


def test_fit_population_std():
    norm = fit_normalizer([_segment([[0.0]]), _segment([[2.0]])], channel_names=("speed",))
    npt.assert_allclose(norm.mean, [1.0])
    npt.assert_allclose(norm.std, [1.0])


def test_fit_ignores_padding():
    values = np.zeros((1, 10))
    values[0, 0] = 7.0
    norm = fit_normalizer([_segment(values, valid_len=1)], channel_names=("speed",))
    npt.assert_allclose(norm.mean, [7.0])


def test_fit_on_nothing_fails():
    with pytest.raises(EmptyFit):
        fit_normalizer([])


def test_apply_keeps_padding_and_round_trips():
    rng = np.random.default_rng(1)
    values = rng.normal(3.0, 2.0, size=(4, 10))
    values[:, 6:] = 0.0
    seg = _segment(values, valid_len=6)
    norm = Normalizer(mean=np.array([1.0, 2.0, 3.0, 4.0]), std=np.array([0.5, 1.0, 2.0, 4.0]))
    scaled = apply_normalizer(norm, seg)
    assert np.all(scaled.channels[:, 6:] == 0.0)
    npt.assert_allclose(denormalize(norm, scaled).channels, seg.channels, rtol=1e-12, atol=1e-12)


def test_apply_identity_normalizer():
    seg = _segment(np.arange(8.0).reshape(4, 2))
    norm = Normalizer(mean=np.zeros(4), std=np.ones(4))
    npt.assert_array_equal(apply_normalizer(norm, seg).channels, seg.channels)


def test_apply_channel_mismatch():
    norm = Normalizer(mean=np.zeros(3), std=np.ones(3), channel_names=CHANNEL_NAMES[:3])
    with pytest.raises(ChannelMismatch):
        apply_normalizer(norm, _segment(np.ones((4, 2))))


def test_normalizer_dict_round_trip():
    norm = Normalizer(mean=np.array([0.1, 0.2, 0.3, 0.4]), std=np.array([1.0, 2.0, 3.0, 4.0]))
    again = Normalizer.from_dict(norm.to_dict())
    npt.assert_array_equal(again.mean, norm.mean)
    npt.assert_array_equal(again.std, norm.std)
    assert again.channel_names == norm.channel_names


def test_trips_to_segments_and_stack(small_trips):
    segs = trips_to_segments(small_trips[:3], length=10)
    # 25 points -> windows of 10, 10, 5
    assert len(segs) == 9
    x, y = stack_segments(segs)
    assert x.shape == (9, 4, 10)
    assert y.tolist() == [0] * 9
