import pytest

from realbrauer.real_cohomology import clear_cache


@pytest.fixture(autouse=True)
def _fresh_cache():
    yield
    clear_cache()
