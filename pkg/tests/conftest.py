import cmath
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from hypbound import Model, ModelPoint

TWO_PI = 2.0 * math.pi


def random_disc_point(rng: np.random.Generator, radius: float = 3.0) -> ModelPoint:
    """Uniform hyperbolic radius up to ``radius`` about the disc origin."""
    r = rng.uniform(0.0, radius)
    phi = rng.uniform(0.0, TWO_PI)
    return ModelPoint.disc(math.tanh(r / 2.0) * cmath.exp(1j * phi))


def random_model_point(rng: np.random.Generator, model: Model,
                       radius: float = 3.0) -> ModelPoint:
    p = random_disc_point(rng, radius)
    if model is Model.DISC:
        return p
    w = p.value
    zeta = 1j * (1.0 + w) / (1.0 - w)
    if model is Model.UPPER_HALF_PLANE:
        return ModelPoint.upper(zeta)
    if model is Model.RIGHT_HALF_PLANE:
        return ModelPoint.right(-1j * zeta)
    raise ValueError(model)


def random_punctured_point(rng: np.random.Generator) -> ModelPoint:
    r = math.exp(rng.uniform(math.log(0.05), math.log(0.95)))
    return ModelPoint.punctured(r * cmath.exp(1j * rng.uniform(0.0, TWO_PI)))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


# hypothesis strategies

def disc_values(max_abs: float = 0.97):
    return st.builds(
        lambda r, t: r * cmath.exp(1j * t),
        st.floats(0.0, max_abs),
        st.floats(0.0, TWO_PI),
    )


def disc_points(max_abs: float = 0.97):
    return st.builds(ModelPoint.disc, disc_values(max_abs))


def upper_points():
    return st.builds(
        lambda x, y: ModelPoint.upper(complex(x, y)),
        st.floats(-5.0, 5.0),
        st.floats(0.05, 20.0),
    )


def right_points():
    return st.builds(
        lambda x, y: ModelPoint.right(complex(x, y)),
        st.floats(0.05, 20.0),
        st.floats(-5.0, 5.0),
    )
