import pytest

from landscape_init import rmt


@pytest.fixture(scope="session")
def sol():
    """Default Painleve table, built once per test session."""
    return rmt.painleve_table()
