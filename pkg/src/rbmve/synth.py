"""Multi-modal synthetic data, dataset CSV persistence and per-dimension histograms."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import EmptyDataset, InvalidConfig, InvalidSpec, IoError, ParseError, RangeError
from .rbm import as_dataset


@dataclass(frozen=True)
class Mode:
    low: float
    high: float
    weight: float


class DistributionSpec:
    """Independent per-dimension mixtures of uniform intervals inside [0, 1]."""

    def __init__(self, dims):
        if not dims:
            raise InvalidSpec("spec needs at least one dimension")
        normalized = []
        for d, modes in enumerate(dims):
            if not modes:
                raise InvalidSpec(f"dimension {d} has no modes")
            parsed = []
            for m in modes:
                if not isinstance(m, Mode):
                    try:
                        m = Mode(float(m["low"]), float(m["high"]), float(m["weight"]))
                    except (KeyError, TypeError, ValueError) as exc:
                        raise InvalidSpec(f"dimension {d}: malformed mode {m!r}") from exc
                if not (0.0 <= m.low < m.high <= 1.0):
                    raise InvalidSpec(f"dimension {d}: need 0 <= low < high <= 1, got {m}")
                if not (m.weight > 0 and math.isfinite(m.weight)):
                    raise InvalidSpec(f"dimension {d}: weight must be positive, got {m.weight}")
                parsed.append(m)
            total = math.fsum(m.weight for m in parsed)
            normalized.append(tuple(Mode(m.low, m.high, m.weight / total) for m in parsed))
        self.dims = tuple(normalized)

    @property
    def n_dims(self) -> int:
        return len(self.dims)

    def __eq__(self, other):
        return isinstance(other, DistributionSpec) and self.dims == other.dims

    def __repr__(self):
        return f"DistributionSpec({[list(m) for m in self.dims]})"

    def to_dict(self) -> dict:
        return {
            "dims": [
                [{"low": m.low, "high": m.high, "weight": m.weight} for m in modes]
                for modes in self.dims
            ]
        }

    @classmethod
    def from_dict(cls, doc) -> "DistributionSpec":
        if not isinstance(doc, dict) or "dims" not in doc:
            raise InvalidSpec("spec document must be an object with a 'dims' list")
        return cls(doc["dims"])

    @classmethod
    def load(cls, path) -> "DistributionSpec":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise IoError(f"cannot read spec file {path}: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"{path}: invalid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def contains(self, data: np.ndarray) -> np.ndarray:
        """Boolean N x D mask: value lies inside one of its dimension's intervals."""
        data = np.asarray(data)
        mask = np.zeros(data.shape, dtype=bool)
        for d, modes in enumerate(self.dims):
            for m in modes:
                mask[:, d] |= (data[:, d] >= m.low) & (data[:, d] <= m.high)
        return mask


def default_spec() -> DistributionSpec:
    text = resources.files("rbmve").joinpath("data/default_spec.json").read_text()
    return DistributionSpec.from_dict(json.loads(text))


def generate_synthetic(spec: DistributionSpec, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` rows: per dimension pick a mode by weight, then a uniform value in it.

    Randomness is consumed dimension by dimension, mode choices before offsets.
    """
    if int(n) != n or n < 1:
        raise InvalidConfig(f"n must be an integer >= 1, got {n!r}")
    n = int(n)
    rng = np.random.default_rng(seed)
    out = np.empty((n, spec.n_dims))
    for d, modes in enumerate(spec.dims):
        lows = np.array([m.low for m in modes])
        highs = np.array([m.high for m in modes])
        weights = np.array([m.weight for m in modes])
        picks = rng.choice(len(modes), size=n, p=weights)
        u = rng.random(n)
        out[:, d] = np.minimum(lows[picks] + u * (highs[picks] - lows[picks]), highs[picks])
    return out


def save_csv(dataset, path) -> None:
    data = as_dataset(dataset)
    lines = [",".join(repr(float(x)) for x in row) for row in data]
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def load_csv(path) -> np.ndarray:
    """Read a headerless CSV of reals in [0, 1]. Row and column numbers in errors are 1-based."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    rows = []
    width = None
    for i, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise ParseError(f"{path}: row {i} has {len(fields)} columns, expected {width}", row=i)
        row = []
        for j, field in enumerate(fields, start=1):
            try:
                value = float(field)
            except ValueError:
                raise ParseError(
                    f"{path}: row {i}, column {j}: cannot parse {field.strip()!r}", row=i, column=j
                ) from None
            if not (0.0 <= value <= 1.0):
                raise RangeError(
                    f"{path}: row {i}, column {j}: value {value!r} outside [0, 1]", row=i, column=j
                )
            row.append(value)
        rows.append(row)
    if not rows:
        raise EmptyDataset(f"{path}: no data rows")
    return np.array(rows, dtype=np.float64)


@dataclass
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray


def compute_histograms(data, n_bins: int) -> list[Histogram]:
    """Uniform bins over [0, 1], right-open except the last, one histogram per column."""
    if int(n_bins) != n_bins or n_bins < 2:
        raise InvalidConfig(f"n_bins must be an integer >= 2, got {n_bins!r}")
    data = as_dataset(data)
    n = data.shape[0]
    hists = []
    for d in range(data.shape[1]):
        counts, edges = np.histogram(data[:, d], bins=int(n_bins), range=(0.0, 1.0))
        density = counts / (n * np.diff(edges))
        hists.append(Histogram(edges, counts, density))
    return hists


def save_histograms(hists: list[Histogram], path) -> None:
    lines = ["dim,bin_low,bin_high,count,density"]
    for d, h in enumerate(hists):
        for k in range(len(h.counts)):
            lines.append(
                f"{d},{float(h.edges[k])!r},{float(h.edges[k + 1])!r},{int(h.counts[k])},{float(h.density[k])!r}"
            )
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
