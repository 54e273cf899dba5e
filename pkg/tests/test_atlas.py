"""Canonical forms, isomorph-free enumeration (two independent regimes),
invariant searches and corpus-wide checks."""

import itertools

import pytest

from matoric import atlas
from matoric.atlas import (
    CHECKS,
    canonical_form,
    enumerate_matroids,
    enumerate_naive,
    is_isomorphic,
    matroid_from_signature,
    relabel,
    scan,
    search_bases_cobases,
)
from matoric.core import bases_cobases, direct_sum, from_bases, uniform
from matoric.errors import BudgetExceeded, GroundSetTooLarge, InvalidSubset
from matoric.fibers import class_census


def m1():
    return from_bases(4, 2, [{1, 2}, {3, 4}, {1, 3}, {2, 4}])


def m2():
    return from_bases(4, 2, [{1, 2}, {3, 4}, {1, 3}, {2, 4}, {1, 4}])


def test_relabel():
    assert relabel(uniform(2, 4), (4, 3, 2, 1)) == uniform(2, 4)
    assert relabel(m1(), (1, 3, 2, 4)) == m1()  # swapping 2 and 3 is an automorphism
    # m2 misses only the base {2,3}; under 1->2->3->1 the hole moves to {1,3}
    cycled = relabel(m2(), (2, 3, 1, 4))
    missing = [c for c in itertools.combinations(range(1, 5), 2)
               if not cycled.contains_base(c)]
    assert missing == [(1, 3)]
    with pytest.raises(InvalidSubset):
        relabel(m1(), (1, 1, 2, 3))
    with pytest.raises(InvalidSubset):
        relabel(m1(), (1, 2, 3))


def test_canonical_form_invariance():
    base = canonical_form(m1())
    for perm in itertools.permutations(range(1, 5)):
        assert canonical_form(relabel(m1(), perm)).signature == base.signature


def test_canonical_witness_property():
    for m in (m1(), m2(), uniform(2, 4), relabel(m2(), (3, 1, 4, 2))):
        cf = canonical_form(m)
        assert matroid_from_signature(m.n, m.r, cf.signature) == relabel(m, cf.permutation)


def test_is_isomorphic():
    assert not is_isomorphic(m1(), m2())
    assert is_isomorphic(m1(), direct_sum(uniform(1, 2), uniform(1, 2)))
    assert is_isomorphic(uniform(2, 4), relabel(uniform(2, 4), (2, 4, 1, 3)))
    assert not is_isomorphic(m1(), uniform(2, 4))


def test_census_is_relabel_invariant():
    reference = sorted(c.delta for c in class_census(m2()))
    for perm in ((2, 1, 4, 3), (4, 3, 2, 1), (3, 1, 4, 2)):
        assert sorted(c.delta for c in class_census(relabel(m2(), perm))) == reference


def test_canonical_ground_set_cap():
    with pytest.raises(GroundSetTooLarge):
        canonical_form(uniform(1, 11))


def test_enumeration_counts_small(cache_dir):
    totals = {n: sum(len(enumerate_matroids(n, r, cache_dir)) for r in range(n + 1))
              for n in range(1, 6)}
    assert totals == {1: 2, 2: 4, 3: 8, 4: 17, 5: 38}
    assert len(enumerate_matroids(4, 2, cache_dir)) == 7
    free = [m for m in enumerate_matroids(4, 2, cache_dir)
            if not m.loops() and not m.coloops()]
    assert len(free) == 3  # exactly the three four-point rank-2 geometries
    assert len(enumerate_matroids(5, 2, cache_dir)) == 13


def test_enumeration_counts_n6_n7(cache_dir):
    assert [len(enumerate_matroids(6, r, cache_dir)) for r in range(7)] == [
        1, 6, 23, 38, 23, 6, 1]
    assert [len(enumerate_matroids(7, r, cache_dir)) for r in range(8)] == [
        1, 7, 37, 108, 108, 37, 7, 1]


def test_enumeration_rank_duality(atlas7):
    for (n, r), members in atlas7.items():
        assert len(members) == len(atlas7[(n, n - r)])


def test_enumeration_regimes_agree(cache_dir):
    """The direct exhaustive filter and the extension-based enumeration are
    fully independent routes; they must emit identical class lists."""
    for n in range(1, 7):
        for r in range(n + 1):
            assert enumerate_naive(n, r) == enumerate_matroids(n, r, cache_dir), (n, r)


def test_enumerated_matroids_revalidate(cache_dir):
    for m in enumerate_matroids(6, 3, cache_dir):
        assert from_bases(m.n, m.r, m.bases) == m
        assert canonical_form(m).signature is not None


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_matroids(9, 4)
    with pytest.raises(BudgetExceeded):
        enumerate_naive(7, 3)


def test_search_bases_cobases(cache_dir):
    # the (6,3) slot: which classes have a given number of bases that are
    # simultaneously cobases
    assert len(search_bases_cobases(6, 3, 14, cache_dir)) == 1
    assert len(search_bases_cobases(6, 3, 18, cache_dir)) == 2
    assert search_bases_cobases(6, 3, 20, cache_dir) == (uniform(3, 6),)
    assert search_bases_cobases(6, 3, 19, cache_dir) == ()
    values = {bases_cobases(m) for m in enumerate_matroids(6, 3, cache_dir)}
    assert values == {0, 8, 12, 14, 16, 18, 20}


def test_cache_roundtrip(tmp_path):
    key = (5, 2)
    atlas._ENUM_MEMO.pop(key, None)
    first = enumerate_matroids(5, 2, str(tmp_path))
    assert (tmp_path / "matroids-5-2.txt").exists()
    atlas._ENUM_MEMO.pop(key, None)
    again = enumerate_matroids(5, 2, str(tmp_path))
    assert first == again


def test_scan_unknown_check():
    with pytest.raises(KeyError):
        scan(4, "no-such-check")


def test_scan_small_corpora(cache_dir):
    assert set(CHECKS) == {
        "binary-vs-minor", "u36-vs-delta", "ci-classification", "uniqueness",
        "delta-bounds", "cobase-bridge", "ci-heredity"}
    for check in ("delta-bounds", "cobase-bridge", "uniqueness"):
        report = scan(5, check, cache_dir)
        assert report.ok, report.failures
        assert report.passed == report.total == 69  # 2 + 4 + 8 + 17 + 38
    ci = scan(5, "ci-classification", cache_dir)
    assert ci.ok
    assert len(ci.flagged) == 3
    assert all(f.n == 4 and f.r == 2 for f in ci.flagged)


def test_scan_explicit_corpus():
    report = scan(0, "delta-bounds", matroids=[m1(), m2(), uniform(2, 4)])
    assert report.ok
    assert report.total == 3


def test_scan_budget():
    with pytest.raises(BudgetExceeded):
        scan(9, "delta-bounds")
