"""Minor search, binaryness, forbidden-minor detection, the rank-5 gap witness."""

import pytest

from matoric.core import (
    bases_cobases,
    direct_sum,
    from_bases,
    transversal,
    uniform,
)
from matoric.errors import InvalidSubset, TargetLargerThanHost
from matoric.fibers import pair_class
from matoric.minors import (
    MinorWitness,
    build_d5_counterexample,
    connected_rank5_minor_possible,
    has_minor,
    has_u36_minor,
    is_binary,
    minor,
    uniform_minor_necessary,
)


def m1():
    return from_bases(4, 2, [{1, 2}, {3, 4}, {1, 3}, {2, 4}])


def k4():
    triangles = ({1, 2, 4}, {1, 3, 5}, {2, 3, 6}, {4, 5, 6})
    import itertools
    bases = [set(c) for c in itertools.combinations(range(1, 7), 3)
             if set(c) not in triangles]
    return from_bases(6, 3, bases)


def test_minor_construction():
    u = uniform(3, 6)
    assert minor(u, delete=(2,), contract=(1,)) == uniform(2, 4)
    assert minor(u, delete=(5, 6)) == uniform(3, 4)
    assert minor(u, contract=(1, 2)) == uniform(1, 4)
    assert minor(u) == u
    with pytest.raises(InvalidSubset):
        minor(u, delete=(1, 2), contract=(2, 3))


def test_has_minor_uniform_target():
    w = has_minor(uniform(3, 6), uniform(2, 4))
    assert w == MinorWitness((2,), (1,), (1, 2, 3, 4))
    assert minor(uniform(3, 6), w.delete_set, w.contract_set) == uniform(2, 4)

    assert has_minor(m1(), uniform(2, 4)) is None
    assert has_minor(uniform(2, 4), uniform(2, 4)) == MinorWitness((), (), (1, 2, 3, 4))


def test_has_minor_general_target():
    # M1 = U(1,2) + U(1,2) sits inside K4 (two disjoint parallel pairs after
    # contracting an edge); the returned witness must revalidate
    w = has_minor(k4(), m1())
    assert w is not None
    assert minor(k4(), w.delete_set, w.contract_set).n == 4
    assert has_minor(k4(), uniform(2, 4)) is None  # K4 is binary


def test_has_minor_errors():
    with pytest.raises(TargetLargerThanHost):
        has_minor(uniform(2, 4), uniform(3, 6))


def test_witness_json():
    w = MinorWitness((2,), (1,), (1, 2, 3, 4))
    assert w.to_json() == {"delete": [2], "contract": [1], "iso": [1, 2, 3, 4]}


def test_is_binary():
    assert not is_binary(uniform(2, 4))
    assert is_binary(m1())
    assert is_binary(k4())
    assert not is_binary(uniform(3, 6))
    assert is_binary(uniform(1, 2))


def test_binary_iff_no_u24_minor_spot_checks():
    for m in (uniform(2, 4), m1(), k4(), uniform(3, 6),
              transversal([{1, 6}, {2, 5}, {3, 4}])):
        assert is_binary(m) == (has_minor(m, uniform(2, 4)) is None)


def test_has_u36_minor():
    assert has_u36_minor(uniform(3, 6))
    assert not has_u36_minor(transversal([{1, 6}, {2, 5}, {3, 4}]))
    assert has_u36_minor(uniform(4, 8))
    assert not has_u36_minor(uniform(2, 4))
    assert not has_u36_minor(k4())


def test_uniform_minor_necessary():
    assert uniform_minor_necessary(uniform(3, 6), 3)
    assert uniform_minor_necessary(uniform(2, 4), 2)
    assert not uniform_minor_necessary(m1(), 2)
    assert not uniform_minor_necessary(k4(), 3)
    with pytest.raises(ValueError):
        uniform_minor_necessary(uniform(2, 4), 1)


def test_connected_rank5_scan_requires_twelve_elements():
    with pytest.raises(InvalidSubset):
        connected_rank5_minor_possible(uniform(2, 4))


def test_d5_counterexample(cache_dir):
    m = build_d5_counterexample(cache_dir)
    assert (m.n, m.r) == (12, 6)
    assert bases_cobases(m) == 252

    # the extremal pair: some base whose complement is also a base realises
    # Delta = C(9,5) = 126 at exchange distance 6
    full = m.full_mask
    base = next(b for b in m.bases if (full ^ b) in m.base_set)
    cls = pair_class(m, base, full ^ base)
    assert cls.delta == 126
    assert cls.exchange_distance == 6

    # ... yet no uniform U(5,10) minor exists, by two independent routes
    assert not connected_rank5_minor_possible(m)
    assert has_minor(m, uniform(5, 10)) is None

    # the degree-5 extremal value is still attained, so attaining the bound
    # does not force the corresponding uniform minor
    assert uniform_minor_necessary(m, 5)
