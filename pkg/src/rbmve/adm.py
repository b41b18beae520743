"""Autoencoder-based divergence measure: ratio of test to training reconstruction MSE."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateTolerance, InvalidInput
from .rbm import Rbm, dataset_mse


class AdmBand(Enum):
    SAME_DISTRIBUTION = "SameDistribution"
    SIMILAR_PARTIAL = "SimilarPartial"
    DIFFERENT = "Different"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class AdmValue:
    mse_trn: float
    mse_tst: float
    adm: float
    band: AdmBand


def _check_nonneg(value, name) -> float:
    value = float(value)
    if math.isnan(value) or math.isinf(value) or value < 0:
        raise InvalidInput(f"{name} must be finite and >= 0, got {value!r}")
    return value


def classify_band(adm: float) -> AdmBand:
    # 0 is outside the published bands; zero error cannot indicate divergence
    adm = _check_nonneg(adm, "adm")
    if adm <= 1.0:
        return AdmBand.SAME_DISTRIBUTION
    if adm < 2.0:
        return AdmBand.SIMILAR_PARTIAL
    return AdmBand.DIFFERENT


def compute_adm(mse_tst: float, mse_trn: float) -> AdmValue:
    mse_tst = _check_nonneg(mse_tst, "mse_tst")
    mse_trn = _check_nonneg(mse_trn, "mse_trn")
    if mse_trn == 0.0:
        raise DegenerateTolerance("training MSE is 0; ADM is undefined")
    adm = mse_tst / mse_trn
    return AdmValue(mse_trn, mse_tst, adm, classify_band(adm))


def adm_between(model: Rbm, training_data, test_data) -> AdmValue:
    return compute_adm(dataset_mse(model, test_data), dataset_mse(model, training_data))
