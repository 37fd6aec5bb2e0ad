import numpy as np
import pytest

from src.config_validation import RunConfig
from tests import synthetic


@pytest.fixture
def run_config(tmp_path) -> RunConfig:
    config = RunConfig()
    config.output.output_dir = str(tmp_path / "out")
    config.output.jobs = 1
    return config


@pytest.fixture
def shur_piece() -> synthetic.SyntheticPiece:
    return synthetic.shur_piece(piece=0, depth=0.0)


@pytest.fixture
def shur_input(tmp_path, shur_piece):
    return synthetic.write_piece(tmp_path / "data", "shur-0", shur_piece, with_onsets=True)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240613)
