import pytest

from bipolar.catalog import load_catalog


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def bases(catalog):
    return catalog.bases
