import pytest

from rainbowap import kernels


@pytest.fixture(params=kernels.available())
def backend(request):
    """Run the test once per available kernel backend."""
    previous = kernels.use(request.param)
    yield request.param
    kernels.use(previous)
