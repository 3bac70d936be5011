import pytest

from krank_lab.exact import build_partition_table


@pytest.fixture(scope="session")
def table():
    return build_partition_table(10_000)


@pytest.fixture(scope="session")
def small_table():
    return build_partition_table(300)
