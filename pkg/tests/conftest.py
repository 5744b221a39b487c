import pytest

from modscatter import sieve_tables


@pytest.fixture(scope="session")
def table_1e4():
    return sieve_tables(10**4)


@pytest.fixture(scope="session")
def table_1e6():
    return sieve_tables(10**6)


@pytest.fixture(scope="session")
def table_1e7():
    return sieve_tables(10**7)
