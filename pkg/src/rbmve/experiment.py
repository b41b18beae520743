"""End-to-end pipeline: synth -> train -> tolerance -> virtual examples -> ADM -> report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .adm import compute_adm
from .errors import InvalidConfig, IoError
from .rbm import TrainConfig, dataset_mse, save_model, train_cd1
from .synth import DistributionSpec, compute_histograms, default_spec, generate_synthetic, save_csv, save_histograms
from .virtual import AUTO, VeConfig, VeResult, run_generation

# sub-seed = top-level seed + offset (mod 2**64)
SEED_OFFSETS = {"data": 0, "train": 1, "candidates": 2}

FILES = {
    "config": "config.json",
    "train_data": "train.csv",
    "model": "model.json",
    "trace": "trace.csv",
    "virtual_examples": "ve.csv",
    "ve_stats": "ve_stats.json",
    "hist_train": "hist_train.csv",
    "hist_ve": "hist_ve.csv",
    "report": "report.json",
}


def derive_seed(seed: int, stage: str) -> int:
    return (int(seed) + SEED_OFFSETS[stage]) % 2**64


@dataclass
class ExperimentConfig:
    """Full experiment parameters. Nested seeds are derived from ``seed``."""

    seed: int = 0
    spec: DistributionSpec = field(default_factory=default_spec)
    n_train: int = 1000
    n_hidden: int = 24
    train: TrainConfig = field(default_factory=TrainConfig)
    ve: VeConfig = field(default_factory=VeConfig)
    n_bins: int = 20

    def __post_init__(self):
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or not 0 <= self.seed < 2**64:
            raise InvalidConfig(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        for name in ("n_train", "n_hidden", "n_bins"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InvalidConfig(f"{name} must be a positive integer, got {value!r}")
        if self.n_bins < 2:
            raise InvalidConfig(f"n_bins must be >= 2, got {self.n_bins}")
        self.train = replace(self.train, seed=derive_seed(self.seed, "train"))
        self.ve = replace(self.ve, seed=derive_seed(self.seed, "candidates"))

    @classmethod
    def from_dict(cls, doc: dict, base_dir=None) -> "ExperimentConfig":
        doc = _checked_keys(doc, cls, "experiment config")
        spec = doc.pop("spec", None)
        if isinstance(spec, str):
            path = Path(spec)
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            doc["spec"] = DistributionSpec.load(path)
        elif spec is not None:
            doc["spec"] = DistributionSpec.from_dict(spec)
        if "train" in doc:
            doc["train"] = TrainConfig(**_checked_keys(doc["train"], TrainConfig, "train", {"seed"}))
        if "ve" in doc:
            doc["ve"] = VeConfig(**_checked_keys(doc["ve"], VeConfig, "ve", {"seed"}))
        return cls(**doc)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            doc = json.loads(Path(path).read_text())
        except OSError as exc:
            raise IoError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidConfig(f"{path}: invalid JSON: {exc}") from exc
        return cls.from_dict(doc, base_dir=Path(path).parent)

    def to_dict(self) -> dict:
        # nested seeds are derived, so leave them out to keep the echo reloadable
        doc = asdict(self)
        doc["spec"] = self.spec.to_dict()
        del doc["train"]["seed"], doc["ve"]["seed"]
        return doc


def _checked_keys(doc, cls, what, forbidden=()) -> dict:
    if not isinstance(doc, dict):
        raise InvalidConfig(f"{what} must be a JSON object")
    unknown = set(doc) - (set(cls.__dataclass_fields__) - set(forbidden))
    if unknown:
        raise InvalidConfig(f"{what}: unknown or derived keys {sorted(unknown)}")
    return dict(doc)


def ve_stats(model, training_data, result: VeResult) -> dict:
    """Stats sidecar for a VE run. mse_ve, adm and band are null when nothing is accepted."""
    mse_trn = dataset_mse(model, training_data)
    stats = {
        "tolerance_used": result.tolerance_used,
        "n_candidates": result.n_candidates,
        "n_accepted": result.n_accepted,
        "mse_trn": mse_trn,
        "mse_ve": None,
        "adm": None,
        "band": None,
    }
    if result.n_accepted:
        value = compute_adm(dataset_mse(model, result.virtual_examples), mse_trn)
        stats.update(mse_ve=value.mse_tst, adm=value.adm, band=str(value.band))
    return stats


def write_json(doc, path) -> None:
    try:
        Path(path).write_text(json.dumps(doc, indent=2) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def save_trace(trace, path) -> None:
    lines = ["epoch,mse"] + [f"{e},{float(m)!r}" for e, m in enumerate(trace, start=1)]
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def save_ve_csv(virtual_examples: np.ndarray, path) -> None:
    # an empty VE set is a legitimate outcome; write an empty file
    if len(virtual_examples):
        save_csv(virtual_examples, path)
    else:
        try:
            Path(path).write_text("")
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc}") from exc


def ensure_writable_dir(out_dir) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise IoError(f"output directory {out} is not writable: {exc}") from exc
    return out


def run_experiment(config: ExperimentConfig, out_dir) -> dict:
    out = ensure_writable_dir(out_dir)
    seeds = {stage: derive_seed(config.seed, stage) for stage in SEED_OFFSETS}
    write_json(config.to_dict(), out / FILES["config"])

    train = generate_synthetic(config.spec, config.n_train, seeds["data"])
    save_csv(train, out / FILES["train_data"])

    model, trace = train_cd1(train, config.n_hidden, config.train)
    save_model(model, out / FILES["model"])
    save_trace(trace, out / FILES["trace"])

    result = run_generation(model, train, config.ve)
    save_ve_csv(result.virtual_examples, out / FILES["virtual_examples"])
    stats = ve_stats(model, train, result)
    write_json(stats, out / FILES["ve_stats"])

    save_histograms(compute_histograms(train, config.n_bins), out / FILES["hist_train"])
    if result.n_accepted:
        save_histograms(compute_histograms(result.virtual_examples, config.n_bins), out / FILES["hist_ve"])
    else:
        save_histograms([], out / FILES["hist_ve"])

    report = {
        **stats,
        "trace": [float(m) for m in trace],
        "seeds": {"top": config.seed, **seeds},
        "config": config.to_dict(),
        "files": dict(FILES),
    }
    write_json(report, out / FILES["report"])
    return report

