import pytest

from cymirror.exactnum import GF
from cymirror.gdreduce import ReductionContext


@pytest.fixture(scope="session")
def field10007():
    return GF(10007)


@pytest.fixture(scope="session")
def ctx10007(field10007):
    """Shared reduction context at (p, lambda0) = (10007, 5)."""
    return ReductionContext(field10007, 5)
