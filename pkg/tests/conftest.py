import pytest
from hypothesis import HealthCheck, settings

from xatlas.verify import Context

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def ctx():
    """Shared memo of groups, graphs and spectra (k <= 4, p <= 13, N <= 20)."""
    return Context(kmax=4, pmax=13, nmax=20, tol=1e-9, extended=True)


@pytest.fixture(scope="session")
def tables(ctx):
    return {k: ctx.group(k) for k in range(1, 5)}
