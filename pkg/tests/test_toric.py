"""Toric ideal of a matroid: generators by degree, mu/nu counts, CI and
uniqueness decisions."""

import itertools

import pytest

from matoric.core import from_bases, transversal, uniform
from matoric.errors import FiberCapExceeded, MatroidError, NotABase, NotRankTwo
from matoric.toric import (
    Binomial,
    contains_k23,
    delta_from_generators,
    height,
    is_complete_intersection,
    is_quadratically_generated,
    markov_basis,
    mu_formula,
    nu_quadratic,
    rank2_graph,
    unique_generating_set,
)


def m1():
    return from_bases(4, 2, [{1, 2}, {3, 4}, {1, 3}, {2, 4}])


def m2():
    return from_bases(4, 2, [{1, 2}, {3, 4}, {1, 3}, {2, 4}, {1, 4}])


def t3():
    return transversal([{1, 6}, {2, 5}, {3, 4}])


def k4():
    triangles = ({1, 2, 4}, {1, 3, 5}, {2, 3, 6}, {4, 5, 6})
    bases = [set(c) for c in itertools.combinations(range(1, 7), 3)
             if set(c) not in triangles]
    return from_bases(6, 3, bases)


def test_height():
    assert height(m1()) == 1
    assert height(m2()) == 1
    assert height(uniform(2, 4)) == 2
    assert height(t3()) == 4
    assert height(k4()) == 10
    assert height(uniform(1, 2)) == 0  # zero ideal
    # loops/coloops cancel: adding a coloop leaves the height unchanged
    assert height(from_bases(5, 3, [{1, 2, 5}, {3, 4, 5}, {1, 3, 5}, {2, 4, 5}])) == 1


def test_markov_m1_single_generator():
    report = markov_basis(m1(), 2)
    assert report.mu_truncated == 1
    assert len(report.generators) == 1
    gen = report.generators[0]
    assert gen.to_json() == {"plus": [[1, 2], [3, 4]], "minus": [[1, 3], [2, 4]]}
    assert gen.degree == 2
    assert report.degree2_complete


def test_markov_u24():
    report = markov_basis(uniform(2, 4), 2)
    assert report.mu_truncated == 2
    # star join from the least monomial of the three-element fiber
    assert all(g.plus == (0b0011, 0b1100) for g in report.generators)
    assert report.per_fiber[(1, 1, 1, 1)] == (3, 3)
    # only fibers with at least two monomials are recorded
    assert all(size >= 2 for size, _ in report.per_fiber.values())


def test_markov_u24_cubic_degree_adds_nothing():
    report = markov_basis(uniform(2, 4), 3)
    assert report.degree_bound == 3
    assert report.mu_truncated == 2
    assert all(g.degree == 2 for g in report.generators)
    assert len(report.per_fiber) == 7  # 1 quadratic + 6 cubic multi-monomial fibers


def test_markov_transversal():
    report = markov_basis(t3(), 3)
    assert report.mu_truncated == 9
    assert sorted(g.degree for g in report.generators) == [2] * 9
    big = report.per_fiber[(1, 1, 1, 1, 1, 1)]
    assert big == (4, 4)  # four disjoint base pairs, no lower-degree joins


def test_markov_rejects_degree_below_two():
    with pytest.raises(ValueError):
        markov_basis(m1(), 1)


def test_markov_cap():
    with pytest.raises(FiberCapExceeded):
        markov_basis(uniform(2, 4), 3, cap=10)


def test_markov_report_json():
    blob = markov_basis(m1(), 2).to_json()
    assert blob["degree_bound"] == 2
    assert blob["mu_truncated"] == 1
    assert len(blob["generators"]) == 1
    assert blob["fibers"] == [
        {"degree_vector": [1, 1, 1, 1], "size": 2, "components": 2}]


def test_mu_formula_matches_fiber_count():
    for m in (m1(), m2(), uniform(2, 4), uniform(2, 5), t3(), k4()):
        assert mu_formula(m) == markov_basis(m, 2).mu_truncated


def test_nu_quadratic():
    assert nu_quadratic(uniform(2, 4)) == 3
    assert nu_quadratic(m1()) == 1
    assert nu_quadratic(t3()) == 16  # 4^(4-2) from the single Delta=4 class
    assert nu_quadratic(k4()) == 1296  # 6^4


def test_delta_from_generators():
    u = uniform(2, 4)
    report = markov_basis(u, 2)
    assert delta_from_generators(report, {1, 2}, {3, 4}) == 3
    assert delta_from_generators(report, {1, 2}, {1, 3}) == 1
    assert delta_from_generators(markov_basis(m1(), 2), {1, 2}, {3, 4}) == 2
    with pytest.raises(NotABase):
        delta_from_generators(report, {1, 2}, {1, 2, 3})


def test_quadratic_generation():
    for m in (m1(), m2(), uniform(2, 4), t3(), k4()):
        verdict = is_quadratically_generated(m, 3)
        assert verdict.quadratic
        assert verdict.witness is None
    with pytest.raises(ValueError):
        is_quadratically_generated(m1(), 2)


def test_complete_intersection_positive():
    for m, ht in ((m1(), 1), (m2(), 1), (uniform(2, 4), 2)):
        verdict = is_complete_intersection(m)
        assert verdict.status == "ci-up-to-degree"
        assert verdict.is_ci is True
        assert verdict.height == ht
        assert verdict.mu_truncated == ht
        assert verdict.degree_bound == 4


def test_complete_intersection_negative():
    verdict = is_complete_intersection(t3())
    assert verdict.status == "not-ci"
    assert verdict.is_ci is False
    assert (verdict.height, verdict.mu_truncated) == (4, 9)
    assert verdict.degree_bound == 2  # certified by the quadratic count alone

    k = is_complete_intersection(k4())
    assert k.is_ci is False
    assert (k.height, k.mu_truncated, k.degree_bound) == (10, 35, 2)


def test_complete_intersection_zero_ideal():
    for m in (uniform(1, 2), uniform(1, 3), uniform(2, 3)):
        verdict = is_complete_intersection(m)
        assert verdict.status == "ci-zero-ideal"
        assert verdict.is_ci is True


def test_complete_intersection_rejects_loops_and_coloops():
    with pytest.raises(MatroidError):
        is_complete_intersection(from_bases(3, 1, [{1}, {2}]))  # 3 is a loop
    with pytest.raises(MatroidError):
        is_complete_intersection(uniform(2, 2))  # all coloops


def test_unique_generating_set():
    v = unique_generating_set(m1())
    assert (v.unique, v.trivial, v.binary, v.diameter) == (True, False, True, 2)
    assert not unique_generating_set(uniform(2, 4)).unique  # not binary
    assert not unique_generating_set(uniform(3, 6)).unique
    kv = unique_generating_set(k4())
    assert (kv.unique, kv.trivial, kv.binary, kv.diameter) == (False, False, True, 3)
    tv = unique_generating_set(uniform(1, 3))
    assert (tv.unique, tv.trivial) == (True, True)


def test_unique_matches_nu_on_quadratically_generated_corpus():
    for m in (m1(), m2(), uniform(2, 4), uniform(2, 5), t3(), k4()):
        assert unique_generating_set(m).unique == (nu_quadratic(m) == 1)


def test_rank2_graph_and_k23():
    g = rank2_graph(uniform(2, 5))
    assert g.number_of_edges() == 10
    assert contains_k23(g)
    assert not contains_k23(rank2_graph(m1()))
    assert not contains_k23(rank2_graph(uniform(2, 4)))
    with pytest.raises(NotRankTwo):
        rank2_graph(uniform(3, 6))


def test_rank2_ci_iff_four_elements():
    """Loop/coloop-free rank-2 check: the complete intersections are exactly
    the three matroids on four elements, and all of them avoid K(2,3)."""
    from matoric import atlas

    for n in range(4, 8):
        for m in atlas.enumerate_matroids(n, 2, "tests/.cache"):
            if m.loops() or m.coloops():
                continue
            verdict = is_complete_intersection(m)
            assert verdict.is_ci is (n == 4)
            if verdict.is_ci:
                assert not contains_k23(rank2_graph(m))
