import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rbmve import (
    DimensionError,
    EmptyDataset,
    InvalidConfig,
    InvalidInput,
    Rbm,
    TrainConfig,
    dataset_mse,
    hidden_activations,
    load_model,
    per_example_sse,
    reconstruct,
    save_model,
    sigmoid,
    train_cd1,
    visible_reconstruction,
)
from rbmve.rbm import cd1_step, initial_model

# Frozen from a 40-digit mpmath evaluation of the hand model in conftest.
HIDDEN_03_08 = [0.82491373183596018188, 0.57444251681165898715]
RECON_03_08 = [0.48450854709101037939, 0.81659375081822556056]
SSE_03_08 = 0.034318756515852956193
HIDDEN_1_0 = [0.57444251681165898715, 0.35434369377420454709]
RECON_1_0 = [0.5082186508528060045, 0.71858851957352947298]
SSE_1_0 = 0.75821835583191107488
VISIBLE_09_01 = [0.6106392339492219883, 0.82127357634114952536]

unit_floats = st.floats(0.0, 1.0, allow_nan=False)


def test_sigmoid_values():
    assert sigmoid(0.0) == 0.5
    assert abs(sigmoid(100.0) - 1.0) < 1e-12
    assert sigmoid(-800.0) >= 0.0


@given(st.floats(-700, 700))
def test_sigmoid_symmetry(x):
    assert math.isclose(sigmoid(x) + sigmoid(-x), 1.0, abs_tol=1e-12)


@given(st.floats(-30, 30), st.floats(-30, 30))
def test_sigmoid_monotone(a, b):
    if a < b:
        assert sigmoid(a) <= sigmoid(b)


def test_zero_model_gives_half():
    m = Rbm.zeros(3, 5)
    assert np.all(hidden_activations(m, [0.2, 0.9, 0.4]) == 0.5)
    assert np.all(visible_reconstruction(m, np.ones(5)) == 0.5)
    assert np.all(reconstruct(m, np.random.default_rng(0).random((7, 3))) == 0.5)


def test_hand_model_layers(hand_model):
    np.testing.assert_allclose(hidden_activations(hand_model, [0.3, 0.8]), HIDDEN_03_08, rtol=0, atol=1e-12)
    np.testing.assert_allclose(visible_reconstruction(hand_model, [0.9, 0.1]), VISIBLE_09_01, rtol=0, atol=1e-12)


def test_hand_model_reconstruct(hand_model):
    out = reconstruct(hand_model, [[0.3, 0.8], [1.0, 0.0]])
    np.testing.assert_allclose(out, [RECON_03_08, RECON_1_0], rtol=0, atol=1e-12)


def test_hand_model_dataset_mse(hand_model):
    assert abs(dataset_mse(hand_model, [[0.3, 0.8], [1.0, 0.0]]) - (SSE_03_08 + SSE_1_0) / 2) < 1e-12


def test_dimension_errors(hand_model):
    with pytest.raises(DimensionError):
        hidden_activations(hand_model, [0.1, 0.2, 0.3])
    with pytest.raises(DimensionError):
        visible_reconstruction(hand_model, [0.1])
    with pytest.raises(DimensionError):
        reconstruct(hand_model, np.zeros((4, 3)))
    with pytest.raises(DimensionError):
        per_example_sse([0.1, 0.2], [0.1])
    with pytest.raises(EmptyDataset):
        dataset_mse(hand_model, np.zeros((0, 2)))


def test_reconstruct_keeps_shape(hand_model, rng):
    data = rng.random((13, 2))
    assert reconstruct(hand_model, data).shape == data.shape


def test_per_example_sse():
    assert per_example_sse([0.3, 0.4], [0.3, 0.4]) == 0.0
    assert per_example_sse([1.0, 0.0], [0.0, 1.0]) == 2.0


@given(arrays(np.float64, 4, elements=unit_floats), arrays(np.float64, 4, elements=unit_floats))
def test_per_example_sse_matches_arithmetic(x, r):
    expected = sum((float(a) - float(b)) ** 2 for a, b in zip(x, r))
    got = per_example_sse(x, r)
    assert got >= 0
    assert abs(got - expected) < 1e-12
    assert per_example_sse(x, x) == 0.0


@settings(deadline=None, max_examples=50)
@given(st.integers(1, 6), st.integers(1, 5), st.integers(1, 8), st.integers(0, 2**32))
def test_dataset_mse_is_mean_of_row_sse(n_visible, n_hidden, n_rows, seed):
    rng = np.random.default_rng(seed)
    model = Rbm(rng.normal(size=(n_visible, n_hidden)), rng.normal(size=n_visible), rng.normal(size=n_hidden))
    data = rng.random((n_rows, n_visible))
    total = 0.0
    for row in data:
        h = [1 / (1 + math.exp(-(sum(row[i] * model.weights[i, j] for i in range(n_visible)) + model.hidden_bias[j])))
             for j in range(n_hidden)]
        r = [1 / (1 + math.exp(-(sum(model.weights[i, j] * h[j] for j in range(n_hidden)) + model.visible_bias[i])))
             for i in range(n_visible)]
        total += sum((row[i] - r[i]) ** 2 for i in range(n_visible))
    assert abs(dataset_mse(model, data) - total / n_rows) < 1e-12
    out = reconstruct(model, data)
    assert np.all((out > 0) & (out < 1))


def test_model_rejects_bad_parameters():
    with pytest.raises(InvalidInput):
        Rbm([[np.nan]], [0.0], [0.0])
    with pytest.raises(DimensionError):
        Rbm(np.zeros((2, 3)), np.zeros(3), np.zeros(3))
    with pytest.raises(DimensionError):
        Rbm(np.zeros((2, 3)), np.zeros(2), np.zeros(2))


def test_dataset_validation(hand_model):
    with pytest.raises(InvalidInput):
        reconstruct(hand_model, [[0.5, 1.5]])
    with pytest.raises(InvalidInput):
        reconstruct(hand_model, [[0.5, np.nan]])


@pytest.mark.parametrize(
    "kwargs",
    [
        {"epochs": 0},
        {"batch_size": 0},
        {"learning_rate": -0.1},
        {"learning_rate": float("nan")},
        {"weight_init_stddev": 0.0},
        {"seed": -1},
        {"seed": 2**64},
    ],
)
def test_train_config_validation(kwargs):
    with pytest.raises(InvalidConfig):
        TrainConfig(**kwargs)


def cd1_oracle(W, b, c, v, u, lr):
    """Pure-Python single CD-1 step for one example given the uniforms ``u``."""
    nv, nh = len(b), len(c)
    s = lambda x: 1 / (1 + math.exp(-x))
    p = [s(sum(v[i] * W[i][j] for i in range(nv)) + c[j]) for j in range(nh)]
    h = [1.0 if u[j] < p[j] else 0.0 for j in range(nh)]
    v2 = [s(sum(W[i][j] * h[j] for j in range(nh)) + b[i]) for i in range(nv)]
    p2 = [s(sum(v2[i] * W[i][j] for i in range(nv)) + c[j]) for j in range(nh)]
    dW = [[lr * (v[i] * p[j] - v2[i] * p2[j]) for j in range(nh)] for i in range(nv)]
    db = [lr * (v[i] - v2[i]) for i in range(nv)]
    dc = [lr * (p[j] - p2[j]) for j in range(nh)]
    return dW, db, dc


@pytest.mark.parametrize("seed", [0, 1, 7, 99])
def test_cd1_single_step_matches_oracle(hand_model, seed):
    v = [0.3, 0.8]
    W0 = hand_model.weights.tolist()
    b0 = hand_model.visible_bias.tolist()
    c0 = hand_model.hidden_bias.tolist()
    u = np.random.default_rng(seed).random((1, 2))[0].tolist()
    dW, db, dc = cd1_oracle(W0, b0, c0, v, u, lr=0.5)

    model = hand_model.copy()
    cd1_step(model, np.array([v]), 0.5, np.random.default_rng(seed))
    np.testing.assert_allclose(model.weights - np.array(W0), dW, rtol=0, atol=1e-10)
    np.testing.assert_allclose(model.visible_bias - np.array(b0), db, rtol=0, atol=1e-10)
    np.testing.assert_allclose(model.hidden_bias - np.array(c0), dc, rtol=0, atol=1e-10)


def test_cd1_batch_update_is_mean_of_row_updates(hand_model):
    batch = [[0.3, 0.8], [0.9, 0.1], [0.0, 1.0]]
    u = np.random.default_rng(5).random((3, 2))
    parts = [cd1_oracle(hand_model.weights.tolist(), hand_model.visible_bias.tolist(),
                        hand_model.hidden_bias.tolist(), v, u[k], lr=0.3) for k, v in enumerate(batch)]
    model = hand_model.copy()
    cd1_step(model, np.array(batch), 0.3, np.random.default_rng(5))
    np.testing.assert_allclose(model.weights - hand_model.weights,
                               np.mean([p[0] for p in parts], axis=0), rtol=0, atol=1e-10)
    np.testing.assert_allclose(model.visible_bias - hand_model.visible_bias,
                               np.mean([p[1] for p in parts], axis=0), rtol=0, atol=1e-10)
    np.testing.assert_allclose(model.hidden_bias - hand_model.hidden_bias,
                               np.mean([p[2] for p in parts], axis=0), rtol=0, atol=1e-10)


def test_zero_learning_rate_keeps_init(rng):
    data = rng.random((20, 3))
    config = TrainConfig(epochs=3, learning_rate=0.0, batch_size=4, weight_init_stddev=0.1, seed=11)
    model, trace = train_cd1(data, 5, config)
    init = initial_model(3, 5, config, np.random.default_rng(11))
    assert np.array_equal(model.weights, init.weights)
    assert np.all(model.visible_bias == 0) and np.all(model.hidden_bias == 0)
    assert len(trace) == 3


def test_train_is_bit_reproducible(rng):
    data = rng.random((50, 4))
    config = TrainConfig(epochs=5, seed=3)
    a, ta = train_cd1(data, 6, config)
    b, tb = train_cd1(data, 6, config)
    assert np.array_equal(a.weights, b.weights)
    assert np.array_equal(a.visible_bias, b.visible_bias)
    assert np.array_equal(ta, tb)
    c, _ = train_cd1(data, 6, TrainConfig(epochs=5, seed=4))
    assert not np.array_equal(a.weights, c.weights)


def test_train_rejects_bad_input():
    with pytest.raises(EmptyDataset):
        train_cd1(np.zeros((0, 3)), 2, TrainConfig(epochs=1))
    with pytest.raises(InvalidConfig):
        train_cd1(np.zeros((4, 3)), 0, TrainConfig(epochs=1))


def test_training_reduces_error(rng):
    data = np.where(rng.random((200, 4)) < 0.5, 0.05, 0.95)
    model, trace = train_cd1(data, 8, TrainConfig(epochs=60, seed=0))
    assert trace[-1] < trace[0]


def test_model_json_round_trip(tmp_path, rng):
    model = Rbm(rng.normal(size=(4, 3)), rng.normal(size=4), rng.normal(size=3))
    path = tmp_path / "m.json"
    save_model(model, path)
    doc = json.loads(path.read_text())
    assert doc["version"] == 1 and doc["n_visible"] == 4 and doc["n_hidden"] == 3
    assert len(doc["weights"]) == 4 and len(doc["weights"][0]) == 3
    back = load_model(path)
    assert np.array_equal(back.weights, model.weights)
    assert np.array_equal(back.visible_bias, model.visible_bias)
    assert np.array_equal(back.hidden_bias, model.hidden_bias)
