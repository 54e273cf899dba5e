"""Minor detection and the Delta-based minor criteria.

``has_minor`` is the brute-force oracle: it scans disjoint (delete, contract)
pairs of the right size, prunes by rank arithmetic, and tests isomorphism via
canonical forms (with a shortcut for uniform targets, which are recognized by
their base count alone).  The census-based criteria — binaryness from the
absence of Delta = 3, U(3,6) minors from Delta = 10 — are the fast
counterparts that the oracle cross-validates on small atlases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .atlas import canonical_form, relabel, search_bases_cobases
from .core import (
    Matroid,
    connected_components,
    direct_sum,
    mask_from_elements,
    renumbering,
    uniform,
)
from .errors import InvalidSubset, SearchFailed, TargetLargerThanHost
from .fibers import class_census


@dataclass(frozen=True)
class MinorWitness:
    """A (delete, contract, relabelling) triple exhibiting a minor.

    ``iso[i-1]`` is the minor element playing the role of target element i;
    relabelling the target through ``iso`` reproduces the minor exactly.
    """

    delete_set: tuple[int, ...]
    contract_set: tuple[int, ...]
    iso: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "delete": list(self.delete_set),
            "contract": list(self.contract_set),
            "iso": list(self.iso),
        }


def minor(m: Matroid, delete: tuple[int, ...] = (), contract: tuple[int, ...] = ()) -> Matroid:
    """The minor obtained by deleting ``delete`` and contracting ``contract``."""
    dset, cset = set(delete), set(contract)
    if dset & cset:
        raise InvalidSubset("delete and contract sets overlap")
    out = m.delete(dset) if dset else m
    if cset:
        remap = renumbering(m.n, dset)
        out = out.contract({remap[e] for e in cset})
    return out


def _apply_witness(target: Matroid, witness: MinorWitness, host: Matroid) -> bool:
    built = minor(host, witness.delete_set, witness.contract_set)
    return relabel(target, witness.iso) == built


def has_minor(m: Matroid, target: Matroid) -> MinorWitness | None:
    """Exhaustive minor search; returns the first witness in candidate order.

    Candidates are scanned with |contract| ascending, then contract and delete
    sets in lexicographic order, so the returned witness is deterministic.
    """
    if target.n > m.n:
        raise TargetLargerThanHost(f"target has {target.n} elements, host {m.n}")
    ground = range(1, m.n + 1)
    full = m.full_mask
    spare = m.n - target.n
    target_uniform = len(target.bases) == comb(target.n, target.r)
    target_sig = None if target_uniform else canonical_form(target).signature
    seen: set[tuple[int, ...]] = set()
    for csize in range(0, spare + 1):
        for cset in itertools.combinations(ground, csize):
            cmask = mask_from_elements(cset)
            if m.rank_of(cmask) > m.r - target.r:
                continue
            rest = [e for e in ground if not cmask >> (e - 1) & 1]
            for dset in itertools.combinations(rest, spare - csize):
                dmask = mask_from_elements(dset)
                if m.rank_of(full & ~dmask) - m.rank_of(cmask) != target.r:
                    continue
                cand = minor(m, dset, cset)
                if cand.bases in seen:
                    continue
                seen.add(cand.bases)
                if len(cand.bases) != len(target.bases):
                    continue
                if target_uniform:
                    iso = tuple(range(1, target.n + 1))
                else:
                    cf_cand = canonical_form(cand)
                    if cf_cand.signature != target_sig:
                        continue
                    cf_tgt = canonical_form(target)
                    inv_cand = [0] * target.n
                    for x, image in enumerate(cf_cand.permutation, start=1):
                        inv_cand[image - 1] = x
                    iso = tuple(inv_cand[c - 1] for c in cf_tgt.permutation)
                witness = MinorWitness(dset, cset, iso)
                if _apply_witness(target, witness, m):
                    return witness
    return None


def is_binary(m: Matroid) -> bool:
    """True when no basis pair has Delta = 3 (no 4-point-line minor)."""
    return all(cls.delta != 3 for cls in class_census(m))


def has_u36_minor(m: Matroid) -> bool:
    """True when some basis pair has Delta = 10.

    A Delta of 10 can only occur at exchange distance 3 or 4 (the general
    bounds confine it there); the distance is checked as a guard.
    """
    return any(
        cls.delta == 10 and cls.exchange_distance in (3, 4)
        for cls in class_census(m)
    )


def uniform_minor_necessary(m: Matroid, d: int) -> bool:
    """True when some basis pair attains Delta = C(2d-1, d).

    This is the necessary condition for a U(d, 2d) minor: the minor's
    complementary pair would attain the value.  The converse holds for
    d = 2, 3 and fails for d = 5 (see ``build_d5_counterexample``).
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    goal = comb(2 * d - 1, d)
    return any(cls.delta == goal for cls in class_census(m))


def connected_rank5_minor_possible(m: Matroid) -> bool:
    """Whether any 10-element, rank-5 minor of a 12-element matroid is connected.

    Scans every disjoint (delete, contract) pair totalling two elements and
    checks the component count of each rank-5 result.  A uniform matroid
    U(5,10) is connected, so a uniformly negative answer certifies its
    absence as a minor.
    """
    if m.n != 12:
        raise InvalidSubset("the two-element scan expects a 12-element host")
    ground = range(1, m.n + 1)
    for csize in range(0, 3):
        for cset in itertools.combinations(ground, csize):
            rest = [e for e in ground if e not in cset]
            for dset in itertools.combinations(rest, 2 - csize):
                cand = minor(m, dset, cset)
                if cand.r != 5:
                    continue
                if connected_components(cand)[0] == 1:
                    return True
    return False


def build_d5_counterexample(cache_dir: str | None = None) -> Matroid:
    """A rank-6 matroid on 12 elements with a pair attaining Delta = 126 =
    C(9,5) yet no U(5,10) minor.

    Built as the direct sum of two rank-3, 6-element matroids with exactly 14
    and 18 bases-cobases; the sum has 14 * 18 = 252 bases-cobases and any
    complementary base-cobase pair has Delta = 252 / 2 = 126.  No minor on
    10 elements can be uniform: removing two elements from a direct sum
    leaves every rank-5 minor disconnected.
    """
    with_14 = search_bases_cobases(6, 3, 14, cache_dir)
    with_18 = search_bases_cobases(6, 3, 18, cache_dir)
    if not with_14 or not with_18:
        raise SearchFailed(
            "no rank-3 matroid on 6 elements with 14 or 18 bases-cobases"
        )
    m = direct_sum(with_14[0], with_18[0])
    if connected_rank5_minor_possible(m):
        raise SearchFailed("a connected rank-5 minor exists; construction invalid")
    return m
