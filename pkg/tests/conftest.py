import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def beamsplitter() -> np.ndarray:
    """Balanced two-mode splitter (1/sqrt(2)) [[1, i], [i, 1]]."""
    s = 1.0 / np.sqrt(2.0)
    return np.array([[s, 1j * s], [1j * s, s]])
