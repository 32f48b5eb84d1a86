import os
import sys

import pytest

# Flat layout: the packages live at the repository root
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from features_ml.dataset import build_dataset  # noqa: E402
from signal_core.signal import CANONICAL_SAMPLE_RATE  # noqa: E402


@pytest.fixture
def sample_rate():
    return CANONICAL_SAMPLE_RATE


@pytest.fixture(scope='session')
def small_dataset():
    """10 stimuli per class, 1 s each; enough rows for every model and PCA"""
    return build_dataset(10, 123, duration_s=1.0)
