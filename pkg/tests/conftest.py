"""Shared fixtures: the exhaustive small-matroid atlases, computed once per
session and persisted under tests/.cache so repeat runs skip the enumeration."""

import pathlib

import pytest

from matoric import atlas

CACHE = str(pathlib.Path(__file__).parent / ".cache")


@pytest.fixture(scope="session")
def cache_dir():
    return CACHE


@pytest.fixture(scope="session")
def atlas7(cache_dir):
    """Every isomorphism class on at most 7 elements, keyed by (n, r)."""
    return {
        (n, r): atlas.enumerate_matroids(n, r, cache_dir)
        for n in range(1, 8)
        for r in range(0, n + 1)
    }


@pytest.fixture(scope="session")
def atlas84(cache_dir):
    """The rank-4 classes on 8 elements (the budget ceiling)."""
    return atlas.enumerate_matroids(8, 4, cache_dir)
