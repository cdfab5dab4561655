from __future__ import annotations

import pytest

from symfix.survey import enumerate_connected_graphs


def connected_catalog(max_n: int):
    return [g for n in range(1, max_n + 1) for g in enumerate_connected_graphs(n)]


@pytest.fixture(scope="session")
def catalog5():
    return connected_catalog(5)


@pytest.fixture(scope="session")
def catalog6():
    return connected_catalog(6)
