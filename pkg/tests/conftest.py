import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from curvlab.submanifold import AmbientSpace, ShapeOperatorSet

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

finite = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)


@st.composite
def shape_sets(draw, n=None, p=None, max_n=5, max_p=3):
    """Random symmetric shape operators with a space-form curvature in {-1, 0, 1}."""
    n = draw(st.integers(2, max_n)) if n is None else n
    p = draw(st.integers(1, max_p)) if p is None else p
    M = draw(arrays(float, (p, n, n), elements=finite))
    c = draw(st.sampled_from([-1.0, 0.0, 1.0]))
    return AmbientSpace(c), ShapeOperatorSet((M + M.transpose(0, 2, 1)) / 2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
