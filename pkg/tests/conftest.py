import pytest
from hypothesis import settings

from extclifford.cyclo import make_ring_for
from extclifford.gf import field_for_dimension

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def fields():
    return {d: field_for_dimension(d) for d in (3, 5, 7, 9, 11, 13)}


@pytest.fixture(scope="session")
def rings(fields):
    return {d: make_ring_for(f) for d, f in fields.items()}
