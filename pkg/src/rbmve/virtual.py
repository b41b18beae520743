"""Virtual example generation by reconstruction-error filtering of uniform candidates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTolerance, DimensionError, InvalidConfig, ToleranceError
from .rbm import Rbm, as_dataset, dataset_mse, reconstruct, row_sse

AUTO = "auto"


@dataclass
class VeConfig:
    n_candidates: int = 5000
    tolerance: float | str = AUTO
    oscillations: int = 1
    seed: int = 0

    def __post_init__(self):
        if int(self.n_candidates) != self.n_candidates or self.n_candidates < 1:
            raise InvalidConfig(f"n_candidates must be an integer >= 1, got {self.n_candidates!r}")
        if int(self.oscillations) != self.oscillations or self.oscillations < 1:
            raise InvalidConfig(f"oscillations must be an integer >= 1, got {self.oscillations!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise InvalidConfig(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.tolerance != AUTO:
            self.tolerance = _check_tolerance(self.tolerance)
        self.n_candidates = int(self.n_candidates)
        self.oscillations = int(self.oscillations)
        self.seed = int(self.seed)


@dataclass
class VeResult:
    virtual_examples: np.ndarray
    accepted_indices: np.ndarray
    candidate_errors: np.ndarray
    tolerance_used: float

    @property
    def n_candidates(self) -> int:
        return len(self.candidate_errors)

    @property
    def n_accepted(self) -> int:
        return len(self.accepted_indices)


def _check_tolerance(tolerance) -> float:
    try:
        value = float(tolerance)
    except (TypeError, ValueError):
        raise ToleranceError(f"tolerance must be a positive number or 'auto', got {tolerance!r}")
    if not value > 0 or np.isnan(value):
        raise ToleranceError(f"tolerance must be > 0, got {tolerance!r}")
    return value


def sample_uniform(n: int, dims: int, seed: int) -> np.ndarray:
    if n < 1 or dims < 1:
        raise InvalidConfig(f"need n >= 1 and dims >= 1, got n={n}, dims={dims}")
    return np.random.default_rng(seed).random((n, dims))


def auto_tolerance(model: Rbm, training_data) -> float:
    tolerance = dataset_mse(model, training_data)
    if tolerance == 0.0:
        raise DegenerateTolerance("training data is reconstructed perfectly; tolerance would be 0")
    return tolerance


def oscillate(model: Rbm, data, oscillations: int = 1) -> np.ndarray:
    out = as_dataset(data)
    for _ in range(oscillations):
        out = reconstruct(model, out)
    return out


def generate_virtual_examples(model: Rbm, candidates, tolerance: float, oscillations: int = 1) -> VeResult:
    """Keep reconstructions whose SSE against their candidate is <= ``tolerance``.

    The stored virtual examples are the reconstructed rows, in candidate order.
    """
    tolerance = _check_tolerance(tolerance)
    if int(oscillations) != oscillations or oscillations < 1:
        raise InvalidConfig(f"oscillations must be an integer >= 1, got {oscillations!r}")
    candidates = as_dataset(candidates, "candidates")
    if candidates.shape[1] != model.n_visible:
        raise DimensionError(
            f"candidates have {candidates.shape[1]} columns, model has {model.n_visible} visible units"
        )
    recon = oscillate(model, candidates, int(oscillations))
    errors = row_sse(candidates, recon)
    accepted = np.flatnonzero(errors <= tolerance)
    return VeResult(recon[accepted], accepted, errors, tolerance)


def run_generation(model: Rbm, training_data, config: VeConfig) -> VeResult:
    """Sample candidates per ``config`` and filter them, resolving 'auto' tolerance."""
    if config.tolerance == AUTO:
        tolerance = auto_tolerance(model, training_data)
    else:
        tolerance = config.tolerance
    candidates = sample_uniform(config.n_candidates, model.n_visible, config.seed)
    return generate_virtual_examples(model, candidates, tolerance, config.oscillations)
