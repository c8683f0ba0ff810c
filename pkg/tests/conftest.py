import pytest

from permutable import all_subgroups, catalog


@pytest.fixture(scope="session")
def catalog_groups():
    return dict(catalog.build_all())


@pytest.fixture(scope="session")
def catalog_lattices(catalog_groups):
    return {name: all_subgroups(grp) for name, grp in catalog_groups.items()}


@pytest.fixture(scope="session")
def s3(catalog_groups):
    return catalog_groups["S3"]
