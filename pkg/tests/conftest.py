import mpmath as mp
import pytest

from mzstar.extract import cached_expansion


@pytest.fixture(scope="session")
def expansion11():
    """The degree-11 expansion, shared across extraction tests."""
    return cached_expansion(11)


@pytest.fixture(autouse=True)
def _default_precision():
    with mp.workprec(272):
        yield
