import pytest

from equitangent.dodecagon import (
    DodecagonParams,
    build_dodecagon,
    chord_motion,
    smooth,
)


@pytest.fixture(scope="session")
def default_params():
    return DodecagonParams()


@pytest.fixture(scope="session")
def default_poly(default_params):
    return build_dodecagon(default_params)


@pytest.fixture(scope="session")
def default_states(default_poly):
    return chord_motion(default_poly)


@pytest.fixture(scope="session")
def default_smoothed(default_poly):
    return smooth(default_poly, 1e-3, 1e3)
