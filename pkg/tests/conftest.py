import pytest

from unitfrac import census


@pytest.fixture(scope="session")
def brute_upto_24():
    """Brute-force census for every n in 1..24, shared across tests."""
    return {n: census.count_bruteforce(n) for n in range(1, 25)}


@pytest.fixture(scope="session")
def mitm_40():
    return census.count_mitm(40)


@pytest.fixture(scope="session")
def mitm_50():
    return census.count_mitm(50)
