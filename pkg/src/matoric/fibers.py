"""Basis-pair equivalence classes and the Delta invariant.

Two unordered base pairs are equivalent when their multiset unions agree,
i.e. when their degree vectors (per-element multiplicities) coincide.  The
class size Delta of a pair is the number of unordered base pairs sharing its
degree vector; it is the central invariant here.

Degree vectors are packed into a single int (4 bits per element) in the hot
loops and exposed as plain tuples at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .core import BaseLike, Matroid, bases_cobases, compress_mask, elements_from_mask
from .errors import IdenticalBases, NotABase

_PACK_BITS = 4

DegreeVector = tuple[int, ...]


def packed_base_vectors(m: Matroid) -> list[int]:
    """Per-base degree vectors packed 4 bits per element; sums of these stay
    carry-free for total degree up to 15."""
    out = []
    for b in m.bases:
        packed = 0
        mask = b
        while mask:
            low = mask & -mask
            packed |= 1 << (_PACK_BITS * (low.bit_length() - 1))
            mask ^= low
        out.append(packed)
    return out


def unpack_degree_vector(packed: int, n: int) -> DegreeVector:
    return tuple((packed >> (_PACK_BITS * i)) & ((1 << _PACK_BITS) - 1) for i in range(n))


def degree_vector(n: int, masks: BaseLike | list) -> DegreeVector:
    """Multiplicity vector of a multiset of bases given as masks."""
    counts = [0] * n
    for mask in masks:
        while mask:
            low = mask & -mask
            counts[low.bit_length() - 1] += 1
            mask ^= low
    return tuple(counts)


@dataclass(frozen=True)
class PairClass:
    """One equivalence class of unordered base pairs."""

    key: DegreeVector
    members: tuple[tuple[int, int], ...]
    delta: int

    @property
    def exchange_distance(self) -> int:
        """d = |B1 \\ B2|, constant across the class."""
        return sum(1 for c in self.key if c == 1) // 2

    def member_sets(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(elements_from_mask(a), elements_from_mask(b)) for a, b in self.members]

    def to_json(self) -> dict:
        rep = self.members[0]
        return {
            "degree_vector": list(self.key),
            "delta": self.delta,
            "representative_pair": [
                list(elements_from_mask(rep[0])),
                list(elements_from_mask(rep[1])),
            ],
        }


def _base_pair_args(m: Matroid, base1: BaseLike, base2: BaseLike) -> tuple[int, int]:
    b1, b2 = m.as_mask(base1), m.as_mask(base2)
    for b in (b1, b2):
        if b not in m.base_set:
            raise NotABase(f"{set(elements_from_mask(b))} is not a base")
    if b1 == b2:
        raise IdenticalBases("pair classes need two distinct bases")
    return b1, b2


def pair_class(m: Matroid, base1: BaseLike, base2: BaseLike) -> PairClass:
    """The equivalence class of one base pair.

    Every member pair (D1, D2) satisfies D1 & D2 = B1 & B2, so members are
    found by scanning bases between the intersection and the union; the
    partner of D1 is then forced.
    """
    b1, b2 = _base_pair_args(m, base1, base2)
    inter, union, sym = b1 & b2, b1 | b2, b1 ^ b2
    members = []
    for d1 in m.bases:
        if d1 & inter == inter and d1 | union == union:
            d2 = inter | (sym & ~d1)
            if d1 < d2 and d2 in m.base_set:
                members.append((d1, d2))
    return PairClass(degree_vector(m.n, [b1, b2]), tuple(members), len(members))


def class_census(m: Matroid) -> list[PairClass]:
    """All pair classes, sorted by degree vector.

    The census partitions all b(b-1)/2 unordered base pairs; each class size
    is its Delta.  Returns an empty list when fewer than two bases exist.
    """
    vecs = packed_base_vectors(m)
    groups: dict[int, list[tuple[int, int]]] = {}
    bases = m.bases
    for i in range(len(bases)):
        vi = vecs[i]
        bi = bases[i]
        for j in range(i + 1, len(bases)):
            groups.setdefault(vi + vecs[j], []).append((bi, bases[j]))
    classes = [
        PairClass(unpack_degree_vector(packed, m.n), tuple(pairs), len(pairs))
        for packed, pairs in groups.items()
    ]
    classes.sort(key=lambda c: c.key)
    return classes


@dataclass(frozen=True)
class DeltaBoundsReport:
    """Observed Delta ranges per exchange distance against the sharp bounds
    2^(d-1) <= Delta <= C(2d-1, d)."""

    holds: bool
    per_distance: dict[int, tuple[int, int, int]]
    violations: tuple[tuple[DegreeVector, int, int], ...]


def delta_bounds_check(m: Matroid) -> DeltaBoundsReport:
    """Verify the Delta bounds on every pair class of M."""
    per_d: dict[int, list[int]] = {}
    violations = []
    for cls in class_census(m):
        d = cls.exchange_distance
        per_d.setdefault(d, []).append(cls.delta)
        if not (1 << (d - 1)) <= cls.delta <= comb(2 * d - 1, d):
            violations.append((cls.key, d, cls.delta))
    summary = {
        d: (min(vals), max(vals), len(vals)) for d, vals in sorted(per_d.items())
    }
    return DeltaBoundsReport(not violations, summary, tuple(violations))


def cobase_bridge(m: Matroid, base1: BaseLike, base2: BaseLike) -> tuple[Matroid, int]:
    """The minor M' = (M / (B1 & B2)) | (B1 ^ B2) and its base-cobase count.

    M' lives on the 2d elements of the symmetric difference and has exactly
    2 * Delta bases that are also cobases (each member pair of the class
    contributes both orders).
    """
    b1, b2 = _base_pair_args(m, base1, base2)
    inter, sym = b1 & b2, b1 ^ b2
    reduced = m.contract(inter) if inter else m
    keep = m.full_mask & ~inter
    bridged = reduced.restrict(compress_mask(sym, keep))
    return bridged, bases_cobases(bridged)


def census_to_json(classes: list[PairClass]) -> list[dict]:
    return [cls.to_json() for cls in classes]
