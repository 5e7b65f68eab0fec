import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "klooster",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("klooster")


@pytest.fixture(scope="session")
def tau_1e6():
    from klooster import tau_sieve

    return tau_sieve(10 ** 6)


@pytest.fixture(scope="session")
def tau_small():
    from klooster import tau_sieve

    return tau_sieve(10 ** 4)
