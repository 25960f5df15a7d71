import pytest
from hypothesis import HealthCheck, settings

from ssp import Oscillation, StringParams

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def reference_params():
    return StringParams(l0=1.0, l=1.25, sigma=1.0, mass=1.0)


@pytest.fixture
def reference_osc(reference_params):
    return Oscillation(reference_params, 0.5)
