import pytest

from colorreduce import MULTISET, build_local1


@pytest.fixture(scope="session")
def host_7_4():
    """The 1470-vertex one-round host; immutable, so shared session-wide."""
    return build_local1(7, 4, MULTISET)
