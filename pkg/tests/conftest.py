import os
import random

import pytest

SEED = int(os.environ.get("ORBIGROUPOID_SEED", "20250810"))


@pytest.fixture
def rng():
    return random.Random(SEED)
