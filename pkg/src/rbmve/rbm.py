"""Restricted Boltzmann Machine with mean-field reconstruction and CD-1 training."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import expit

from .errors import DimensionError, EmptyDataset, InvalidConfig, InvalidInput, IoError, ParseError

MODEL_FORMAT_VERSION = 1


def sigmoid(x):
    return expit(x)


def as_dataset(values, name="data") -> np.ndarray:
    """Validate ``values`` as an N x D float matrix with entries in [0, 1]."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise EmptyDataset(f"{name} has no rows")
    if arr.shape[1] == 0:
        raise DimensionError(f"{name} has no columns")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains NaN or Inf")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise InvalidInput(f"{name} has entries outside [0, 1]")
    return arr


@dataclass
class Rbm:
    """Bernoulli-Bernoulli RBM.

    ``weights`` has shape (n_visible, n_hidden); visible units take real values
    in [0, 1], read as Bernoulli probabilities.
    """

    weights: np.ndarray
    visible_bias: np.ndarray
    hidden_bias: np.ndarray

    def __post_init__(self):
        self.weights = np.array(self.weights, dtype=np.float64)
        self.visible_bias = np.array(self.visible_bias, dtype=np.float64)
        self.hidden_bias = np.array(self.hidden_bias, dtype=np.float64)
        if self.weights.ndim != 2:
            raise DimensionError(f"weights must be 2-D, got shape {self.weights.shape}")
        n_visible, n_hidden = self.weights.shape
        if n_visible < 1 or n_hidden < 1:
            raise DimensionError("model needs at least one visible and one hidden unit")
        if self.visible_bias.shape != (n_visible,):
            raise DimensionError(
                f"visible_bias has shape {self.visible_bias.shape}, expected ({n_visible},)"
            )
        if self.hidden_bias.shape != (n_hidden,):
            raise DimensionError(
                f"hidden_bias has shape {self.hidden_bias.shape}, expected ({n_hidden},)"
            )
        for name in ("weights", "visible_bias", "hidden_bias"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise InvalidInput(f"{name} contains NaN or Inf")

    @property
    def n_visible(self) -> int:
        return self.weights.shape[0]

    @property
    def n_hidden(self) -> int:
        return self.weights.shape[1]

    @classmethod
    def zeros(cls, n_visible: int, n_hidden: int) -> "Rbm":
        return cls(
            np.zeros((n_visible, n_hidden)), np.zeros(n_visible), np.zeros(n_hidden)
        )

    def copy(self) -> "Rbm":
        return Rbm(self.weights.copy(), self.visible_bias.copy(), self.hidden_bias.copy())

    def to_dict(self) -> dict:
        return {
            "version": MODEL_FORMAT_VERSION,
            "n_visible": self.n_visible,
            "n_hidden": self.n_hidden,
            "weights": self.weights.tolist(),
            "visible_bias": self.visible_bias.tolist(),
            "hidden_bias": self.hidden_bias.tolist(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Rbm":
        try:
            version = doc["version"]
            n_visible = int(doc["n_visible"])
            n_hidden = int(doc["n_hidden"])
            weights = np.array(doc["weights"], dtype=np.float64)
            visible_bias = doc["visible_bias"]
            hidden_bias = doc["hidden_bias"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed model document: {exc}") from exc
        if version != MODEL_FORMAT_VERSION:
            raise ParseError(f"unsupported model version {version!r}")
        if weights.shape != (n_visible, n_hidden):
            raise DimensionError(
                f"weights shape {weights.shape} does not match ({n_visible}, {n_hidden})"
            )
        return cls(weights, visible_bias, hidden_bias)


def save_model(model: Rbm, path) -> None:
    # json writes floats via repr, which round-trips exactly
    try:
        Path(path).write_text(json.dumps(model.to_dict(), indent=2) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write model to {path}: {exc}") from exc


def load_model(path) -> Rbm:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read model {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    return Rbm.from_dict(doc)


def _check_last_dim(x: np.ndarray, expected: int, what: str):
    if x.ndim not in (1, 2) or x.shape[-1] != expected:
        raise DimensionError(f"{what} has shape {x.shape}, expected last dimension {expected}")


def hidden_activations(model: Rbm, v) -> np.ndarray:
    """P(h=1 | v). Accepts a single vector or a batch of rows."""
    v = np.asarray(v, dtype=np.float64)
    _check_last_dim(v, model.n_visible, "visible input")
    return sigmoid(v @ model.weights + model.hidden_bias)


def visible_reconstruction(model: Rbm, h) -> np.ndarray:
    """P(v=1 | h). Accepts a single vector or a batch of rows."""
    h = np.asarray(h, dtype=np.float64)
    _check_last_dim(h, model.n_hidden, "hidden input")
    return sigmoid(h @ model.weights.T + model.visible_bias)


def reconstruct(model: Rbm, data) -> np.ndarray:
    """One deterministic visible -> hidden -> visible pass using probabilities."""
    data = as_dataset(data)
    if data.shape[1] != model.n_visible:
        raise DimensionError(
            f"data has {data.shape[1]} columns, model has {model.n_visible} visible units"
        )
    return visible_reconstruction(model, hidden_activations(model, data))


def per_example_sse(x, r) -> float:
    x = np.asarray(x, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    if x.shape != r.shape or x.ndim != 1:
        raise DimensionError(f"vector shapes differ or are not 1-D: {x.shape} vs {r.shape}")
    return float(np.sum((x - r) ** 2))


def row_sse(x: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Per-row sum of squared error between two equally shaped matrices."""
    if x.shape != r.shape:
        raise DimensionError(f"shape mismatch: {x.shape} vs {r.shape}")
    return np.sum((x - r) ** 2, axis=1)


def dataset_mse(model: Rbm, data) -> float:
    """Mean over rows of the per-row SSE between ``data`` and its reconstruction.

    Note this sums over dimensions rather than averaging, so it is D times the
    elementwise MSE.
    """
    data = as_dataset(data)
    # fsum keeps the result independent of row order
    return math.fsum(row_sse(data, reconstruct(model, data))) / data.shape[0]


@dataclass
class TrainConfig:
    epochs: int = 3000
    learning_rate: float = 0.1
    batch_size: int = 10
    weight_init_stddev: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if int(self.epochs) != self.epochs or self.epochs < 1:
            raise InvalidConfig(f"epochs must be an integer >= 1, got {self.epochs!r}")
        if int(self.batch_size) != self.batch_size or self.batch_size < 1:
            raise InvalidConfig(f"batch_size must be an integer >= 1, got {self.batch_size!r}")
        # learning_rate == 0 is allowed as a no-op run
        if not np.isfinite(self.learning_rate) or self.learning_rate < 0:
            raise InvalidConfig(f"learning_rate must be finite and >= 0, got {self.learning_rate!r}")
        if not np.isfinite(self.weight_init_stddev) or self.weight_init_stddev <= 0:
            raise InvalidConfig(
                f"weight_init_stddev must be > 0, got {self.weight_init_stddev!r}"
            )
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise InvalidConfig(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        self.epochs = int(self.epochs)
        self.batch_size = int(self.batch_size)
        self.learning_rate = float(self.learning_rate)
        self.weight_init_stddev = float(self.weight_init_stddev)
        self.seed = int(self.seed)


def initial_model(n_visible: int, n_hidden: int, config: TrainConfig, rng: np.random.Generator) -> Rbm:
    weights = rng.normal(0.0, config.weight_init_stddev, size=(n_visible, n_hidden))
    return Rbm(weights, np.zeros(n_visible), np.zeros(n_hidden))


def cd1_step(model: Rbm, batch: np.ndarray, learning_rate: float, rng: np.random.Generator) -> None:
    """Apply one CD-1 update in place.

    Hidden states are sampled once per step, drawing uniforms of shape
    (rows, n_hidden) in row-major order. The divisor is the actual number of
    rows in ``batch``, so a short final batch is averaged correctly.
    """
    W, b, c = model.weights, model.visible_bias, model.hidden_bias
    p_pos = sigmoid(batch @ W + c)
    h = (rng.random(p_pos.shape) < p_pos).astype(np.float64)
    v_neg = sigmoid(h @ W.T + b)
    p_neg = sigmoid(v_neg @ W + c)
    scale = learning_rate / batch.shape[0]
    W += scale * (batch.T @ p_pos - v_neg.T @ p_neg)
    b += scale * np.sum(batch - v_neg, axis=0)
    c += scale * np.sum(p_pos - p_neg, axis=0)


def train_cd1(data, n_hidden: int, config: TrainConfig | None = None):
    """Train an RBM with single-step contrastive divergence.

    Mini-batches are taken in row order without shuffling. All randomness comes
    from one generator seeded with ``config.seed``: weight init first, then the
    hidden samples of each step in turn.

    Returns ``(model, trace)`` with ``trace[e]`` the dataset MSE after epoch e.
    """
    config = config or TrainConfig()
    data = as_dataset(data)
    if int(n_hidden) != n_hidden or n_hidden < 1:
        raise InvalidConfig(f"n_hidden must be an integer >= 1, got {n_hidden!r}")
    rng = np.random.default_rng(config.seed)
    model = initial_model(data.shape[1], int(n_hidden), config, rng)
    n = data.shape[0]
    trace = []
    for _ in range(config.epochs):
        for start in range(0, n, config.batch_size):
            cd1_step(model, data[start:start + config.batch_size], config.learning_rate, rng)
        trace.append(dataset_mse(model, data))
    if not all(np.isfinite(getattr(model, k)).all() for k in ("weights", "visible_bias", "hidden_bias")):
        raise InvalidInput("training diverged to non-finite parameters")
    return model, np.array(trace)
