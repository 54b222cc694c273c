import pytest
from hypothesis import HealthCheck, settings

from bundle import base_pair
from torus import default_structure

settings.register_profile(
    "qtorus",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("qtorus")


@pytest.fixture
def bases():
    """U-sort and V-sort bases over (u0, v0)."""
    return base_pair("u0", "v0")


@pytest.fixture
def structure():
    return default_structure(3)
