"""Train an RBM, generate virtual examples by reconstruction-error filtering, score them with ADM."""

from .adm import AdmBand, AdmValue, adm_between, classify_band, compute_adm
from .errors import (
    DegenerateTolerance,
    DimensionError,
    EmptyDataset,
    InvalidConfig,
    InvalidInput,
    InvalidSpec,
    IoError,
    ParseError,
    RangeError,
    RbmVeError,
    ToleranceError,
)
from .rbm import (
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
from .synth import DistributionSpec, compute_histograms, default_spec, generate_synthetic, load_csv, save_csv
from .virtual import VeConfig, VeResult, auto_tolerance, generate_virtual_examples, sample_uniform

__version__ = "0.1.0"
