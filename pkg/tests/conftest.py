import numpy as np
import pytest

from rbmve import Rbm
from rbmve.experiment import ExperimentConfig, run_experiment

ACCEPTANCE_LINES = []


@pytest.fixture
def hand_model():
    return Rbm(
        weights=[[0.5, -1.0], [2.0, 0.25]],
        visible_bias=[0.1, -0.3],
        hidden_bias=[-0.2, 0.4],
    )


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def default_run(tmp_path_factory):
    """One full default experiment, shared by the slow tests."""
    out = tmp_path_factory.mktemp("default_run")
    report = run_experiment(ExperimentConfig(), out)
    return out, report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
