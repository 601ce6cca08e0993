import numpy as np
import pytest
from hypothesis import settings

from reskit.fixtures import random_micro_model, stock3

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def model():
    return stock3()


def micro(seed, **kw):
    rng = np.random.default_rng(seed)
    return rng, random_micro_model(rng, **kw)
