import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ncps.oracle import build_fock_rep  # noqa: E402


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture(scope="session")
def rep64():
    return build_fock_rep(64)
