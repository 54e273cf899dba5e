"""Matroids as bit-mask base families.

Ground elements are 1..n externally and bit positions 0..n-1 internally, so a
base is a single ``int`` mask.  A matroid stores its bases sorted by mask
value, which fixes one canonical ordering for every derived report.  Values
are immutable and all operations are pure functions of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Union

import networkx as nx

from .errors import (
    EmptyPresentation,
    ExchangeAxiomViolated,
    GroundSetTooLarge,
    InvalidSubset,
    MatroidError,
    NotEquicardinal,
    RankOutOfRange,
    RankTooLargeForExhaustiveSearch,
)

MAX_GROUND_SIZE = 64

BaseLike = Union[int, Iterable[int]]


def mask_from_elements(elements: Iterable[int]) -> int:
    """Pack 1-based elements into a bit mask."""
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def elements_from_mask(mask: int) -> tuple[int, ...]:
    """Unpack a bit mask into sorted 1-based elements."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def _bits(mask: int):
    """Yield 0-based bit positions of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def compress_mask(mask: int, keep: int) -> int:
    """Renumber the bits of ``mask`` onto the positions kept by ``keep``.

    ``mask`` must be a submask of ``keep``.  Bit i of ``keep`` becomes bit
    ``popcount(keep & ((1 << i) - 1))`` of the result, i.e. surviving elements
    are relabelled 1..popcount(keep) preserving their order.
    """
    out = 0
    for i in _bits(mask):
        out |= 1 << (keep & ((1 << i) - 1)).bit_count()
    return out


_compress = compress_mask


def renumbering(n: int, removed: Iterable[int]) -> dict[int, int]:
    """Order-preserving relabelling 1..n-|removed| of the surviving elements."""
    gone = set(removed)
    out: dict[int, int] = {}
    label = 0
    for e in range(1, n + 1):
        if e not in gone:
            label += 1
            out[e] = label
    return out


class Matroid:
    """A matroid on ground set {1..n} given by its bases.

    The constructor trusts its arguments; use :func:`from_bases` for checked
    construction from user input.
    """

    __slots__ = ("n", "r", "bases", "base_set")

    def __init__(self, n: int, r: int, bases: tuple[int, ...]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "base_set", frozenset(bases))

    def __setattr__(self, name, value):
        raise AttributeError("Matroid values are immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and self.bases == other.bases
        )

    def __hash__(self):
        return hash((self.n, self.bases))

    def __repr__(self):
        shown = [elements_from_mask(b) for b in self.bases[:6]]
        tail = ", ..." if len(self.bases) > 6 else ""
        return f"Matroid(n={self.n}, r={self.r}, bases={shown}{tail})"

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def base_sets(self) -> list[tuple[int, ...]]:
        """Bases as sorted tuples of 1-based elements, in canonical order."""
        return [elements_from_mask(b) for b in self.bases]

    def as_mask(self, base: BaseLike) -> int:
        """Normalize a base argument (mask or element iterable) to a mask."""
        return base if isinstance(base, int) else mask_from_elements(base)

    def contains_base(self, base: BaseLike) -> bool:
        return self.as_mask(base) in self.base_set

    def rank_of(self, subset: BaseLike) -> int:
        """Rank of a subset: the largest intersection with any base."""
        mask = self.as_mask(subset)
        return max((b & mask).bit_count() for b in self.bases)

    def dual(self) -> "Matroid":
        full = self.full_mask
        return Matroid(self.n, self.n - self.r, tuple(sorted(full ^ b for b in self.bases)))

    def _subset_arg(self, subset: BaseLike, allow_full: bool) -> int:
        mask = self.as_mask(subset)
        if mask & ~self.full_mask:
            raise InvalidSubset(f"{set(elements_from_mask(mask & ~self.full_mask))} outside ground set 1..{self.n}")
        if not allow_full and mask == self.full_mask:
            raise InvalidSubset("cannot remove the whole ground set")
        return mask

    def delete(self, subset: BaseLike) -> "Matroid":
        """Deletion M\\A; survivors are renumbered 1..n-|A| order-preservingly.

        The relabelling map is :func:`renumbering`\\ ``(n, A)``.
        """
        gone = self._subset_arg(subset, allow_full=False)
        if gone == 0:
            return self
        keep = self.full_mask & ~gone
        new_rank = max((b & keep).bit_count() for b in self.bases)
        masks = sorted({_compress(b & keep, keep) for b in self.bases
                        if (b & keep).bit_count() == new_rank})
        return Matroid(self.n - gone.bit_count(), new_rank, tuple(masks))

    def contract(self, subset: BaseLike) -> "Matroid":
        """Contraction M/A, computed as the dual of deletion on the dual."""
        gone = self._subset_arg(subset, allow_full=False)
        if gone == 0:
            return self
        return self.dual().delete(gone).dual()

    def restrict(self, subset: BaseLike) -> "Matroid":
        """Restriction M|A = deletion of the complement of A."""
        keep = self._subset_arg(subset, allow_full=True)
        if keep == 0:
            raise InvalidSubset("cannot restrict to the empty set")
        return self.delete(self.full_mask & ~keep)

    def loops(self) -> tuple[int, ...]:
        """Elements contained in no base."""
        covered = 0
        for b in self.bases:
            covered |= b
        return elements_from_mask(self.full_mask & ~covered)

    def coloops(self) -> tuple[int, ...]:
        """Elements contained in every base."""
        common = self.full_mask
        for b in self.bases:
            common &= b
        return elements_from_mask(common)


def from_bases(n: int, r: int, bases: Iterable[Iterable[int]]) -> Matroid:
    """Validated construction from a family of candidate bases.

    Checks ground-set bounds, equicardinality, and the basis exchange axiom;
    an exchange failure reports the first witness triple (B1, B2, e) in
    canonical base order.
    """
    if n < 1:
        raise MatroidError("ground set must have at least one element")
    if n > MAX_GROUND_SIZE:
        raise GroundSetTooLarge(f"n = {n} exceeds the bit-mask bound {MAX_GROUND_SIZE}")
    if not 0 <= r <= n:
        raise RankOutOfRange(f"rank {r} not in 0..{n}")
    full = (1 << n) - 1
    masks = set()
    for base in bases:
        mask = base if isinstance(base, int) else mask_from_elements(base)
        if mask & ~full:
            raise MatroidError(
                f"base element {elements_from_mask(mask & ~full)[0]} outside ground set 1..{n}"
            )
        if mask.bit_count() != r:
            raise NotEquicardinal(elements_from_mask(mask), r)
        masks.add(mask)
    if not masks:
        raise MatroidError("at least one base is required")
    ordered = tuple(sorted(masks))
    witness = _exchange_violation(ordered, frozenset(ordered))
    if witness is not None:
        b1, b2, e = witness
        raise ExchangeAxiomViolated(elements_from_mask(b1), elements_from_mask(b2), e)
    return Matroid(n, r, ordered)


def _exchange_violation(bases: tuple[int, ...], base_set: frozenset[int]):
    """First (B1, B2, e) with no valid exchange, or None if the axiom holds."""
    for b1 in bases:
        for b2 in bases:
            if b1 == b2:
                continue
            only1 = b1 & ~b2
            candidates = b2 & ~b1
            for e in _bits(only1):
                stripped = b1 ^ (1 << e)
                for f in _bits(candidates):
                    if stripped | (1 << f) in base_set:
                        break
                else:
                    return b1, b2, e + 1
    return None


def uniform(r: int, n: int) -> Matroid:
    """The uniform matroid U(r, n): every r-subset is a base."""
    if n < 1:
        raise MatroidError("ground set must have at least one element")
    if n > MAX_GROUND_SIZE:
        raise GroundSetTooLarge(f"n = {n} exceeds the bit-mask bound {MAX_GROUND_SIZE}")
    if not 0 <= r <= n:
        raise RankOutOfRange(f"rank {r} not in 0..{n}")
    masks = tuple(sorted(mask_from_elements(c) for c in itertools.combinations(range(1, n + 1), r)))
    return Matroid(n, r, masks)


def _max_matching_size(adjacency: list[int], n_right: int) -> tuple[int, dict[int, int]]:
    """Maximum bipartite matching via augmenting paths.

    ``adjacency[u]`` is a bit mask over right-side indices reachable from left
    vertex u.  Returns the matching size and the right-to-left assignment.
    """
    match_right: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for v in _bits(adjacency[u]):
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    size = 0
    for u in range(len(adjacency)):
        if augment(u, set()):
            size += 1
    return size, match_right


def transversal(sets: Iterable[Iterable[int]], n: int | None = None) -> Matroid:
    """Transversal matroid of a set system: bases are maximum partial transversals.

    Elements outside every set are loops.  ``n`` defaults to the largest
    element mentioned.
    """
    system = [mask_from_elements(s) for s in sets]
    if not system or any(m == 0 for m in system):
        raise EmptyPresentation("presentation needs at least one non-empty set")
    union = 0
    for m in system:
        union |= m
    top = union.bit_length()
    if n is None:
        n = top
    if n < top:
        raise MatroidError(f"element {top} outside ground set 1..{n}")
    if n > MAX_GROUND_SIZE:
        raise GroundSetTooLarge(f"n = {n} exceeds the bit-mask bound {MAX_GROUND_SIZE}")

    members = list(_bits(union))
    adjacency = [
        sum(1 << j for j, s in enumerate(system) if s >> e & 1) for e in members
    ]
    rank, _ = _max_matching_size(adjacency, len(system))

    masks = []
    for combo in itertools.combinations(range(len(members)), rank):
        sub_adj = [adjacency[i] for i in combo]
        size, _ = _max_matching_size(sub_adj, len(system))
        if size == rank:
            masks.append(sum(1 << members[i] for i in combo))
    return Matroid(n, rank, tuple(sorted(masks)))


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Direct sum; the second summand is shifted to elements n1+1..n1+n2."""
    n = m1.n + m2.n
    if n > MAX_GROUND_SIZE:
        raise GroundSetTooLarge(f"combined ground set {n} exceeds {MAX_GROUND_SIZE}")
    shift = m1.n
    masks = tuple(sorted(b1 | (b2 << shift) for b1 in m1.bases for b2 in m2.bases))
    return Matroid(n, m1.r + m2.r, masks)


@dataclass(frozen=True)
class SimplifyReport:
    """What was removed by loop/coloop simplification and how labels moved."""

    loops: tuple[int, ...]
    coloops: tuple[int, ...]
    element_map: dict[int, int]


def simplify_loops_coloops(m: Matroid) -> tuple[Matroid, SimplifyReport]:
    """Delete all loops and contract all coloops, renumbering the survivors."""
    loops = m.loops()
    coloops = m.coloops()
    removed_mask = mask_from_elements(loops) | mask_from_elements(coloops)
    if removed_mask == 0:
        return m, SimplifyReport((), (), {e: e for e in range(1, m.n + 1)})
    if removed_mask == m.full_mask:
        raise InvalidSubset("matroid consists entirely of loops and coloops")
    keep = m.full_mask & ~removed_mask
    coloop_mask = mask_from_elements(coloops)
    masks = tuple(sorted({_compress(b & ~coloop_mask, keep) for b in m.bases}))
    out = Matroid(keep.bit_count(), m.r - len(coloops), masks)
    return out, SimplifyReport(loops, coloops, renumbering(m.n, loops + coloops))


@dataclass(frozen=True)
class ExchangeReport:
    """Outcome of an exchange-property verification."""

    holds: bool
    counterexample: tuple | None


def verify_symmetric_exchange(m: Matroid) -> ExchangeReport:
    """Check symmetric exchange: for all B1, B2 and e in B1\\B2 there is an
    f in B2\\B1 with both B1-e+f and B2+e-f bases."""
    for b1 in m.bases:
        for b2 in m.bases:
            if b1 == b2:
                continue
            for e in _bits(b1 & ~b2):
                ebit = 1 << e
                ok = False
                for f in _bits(b2 & ~b1):
                    fbit = 1 << f
                    if (b1 ^ ebit) | fbit in m.base_set and (b2 ^ fbit) | ebit in m.base_set:
                        ok = True
                        break
                if not ok:
                    return ExchangeReport(
                        False,
                        (elements_from_mask(b1), elements_from_mask(b2), e + 1),
                    )
    return ExchangeReport(True, None)


def verify_multiple_symmetric_exchange(m: Matroid) -> ExchangeReport:
    """Check multiple symmetric exchange: for all B1, B2 and A1 subset of B1
    there is A2 subset of B2 with (B1\\A1)|A2 and (B2\\A2)|A1 both bases.

    Exhaustive over subsets; cost grows as b^2 * 4^r.
    """
    for b1 in m.bases:
        e1 = list(_bits(b1))
        for b2 in m.bases:
            if b1 == b2:
                continue
            e2 = list(_bits(b2))
            for pick1 in range(1 << len(e1)):
                a1 = sum(1 << e1[i] for i in _bits(pick1))
                ok = False
                for pick2 in range(1 << len(e2)):
                    a2 = sum(1 << e2[i] for i in _bits(pick2))
                    if (b1 & ~a1) | a2 in m.base_set and (b2 & ~a2) | a1 in m.base_set:
                        ok = True
                        break
                if not ok:
                    return ExchangeReport(
                        False,
                        (elements_from_mask(b1), elements_from_mask(b2), elements_from_mask(a1)),
                    )
    return ExchangeReport(True, None)


def connected_components(m: Matroid) -> tuple[int, list[list[int]]]:
    """Connectivity partition of the ground set.

    Elements are joined when a single base exchange swaps one for the other,
    which connects exactly the pairs lying on a common circuit; loops and
    coloops end up as singleton components.  Returns (count, partition) with
    the partition sorted by least element.
    """
    parent = list(range(m.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    full = m.full_mask
    for b in m.bases:
        for e in _bits(b):
            stripped = b ^ (1 << e)
            for f in _bits(full & ~b):
                if stripped | (1 << f) in m.base_set:
                    union(e + 1, f + 1)
    groups: dict[int, list[int]] = {}
    for e in range(1, m.n + 1):
        groups.setdefault(find(e), []).append(e)
    partition = sorted(groups.values())
    return len(partition), partition


def bases_cobases(m: Matroid) -> int:
    """Number of bases whose complement is also a base (0 unless n = 2r)."""
    full = m.full_mask
    return sum(1 for b in m.bases if full ^ b in m.base_set)


def basis_graph(m: Matroid) -> nx.Graph:
    """Graph on bases, adjacent when they differ by a single exchange."""
    g = nx.Graph()
    g.add_nodes_from(m.bases)
    for b1, b2 in itertools.combinations(m.bases, 2):
        if (b1 ^ b2).bit_count() == 2:
            g.add_edge(b1, b2)
    return g


def basis_graph_diameter(m: Matroid) -> int:
    if len(m.bases) == 1:
        return 0
    return nx.diameter(basis_graph(m))


@dataclass(frozen=True)
class SboResult:
    """Outcome of the strong base orderability search."""

    orderable: bool
    witnesses: dict[tuple[tuple[int, ...], tuple[int, ...]], dict[int, int]] | None
    failing_pair: tuple[tuple[int, ...], tuple[int, ...]] | None


def strongly_base_orderable(m: Matroid) -> SboResult:
    """Search, per base pair, for a bijection whose every partial swap is a base.

    A pair (B1, B2) needs a bijection f: B1 -> B2 with (B1\\C) | f(C) a base
    for every C subset of B1.  The search is exhaustive over bijections with
    incremental pruning, and is capped at rank 8.
    """
    if m.r > 8:
        raise RankTooLargeForExhaustiveSearch(f"rank {m.r} > 8")
    witnesses: dict[tuple[tuple[int, ...], tuple[int, ...]], dict[int, int]] = {}
    for b1, b2 in itertools.combinations(m.bases, 2):
        mapping = _sbo_bijection(m, b1, b2)
        if mapping is None:
            return SboResult(False, None, (elements_from_mask(b1), elements_from_mask(b2)))
        witnesses[(elements_from_mask(b1), elements_from_mask(b2))] = mapping
    return SboResult(True, witnesses, None)


def _sbo_bijection(m: Matroid, b1: int, b2: int) -> dict[int, int] | None:
    """One witness bijection for a base pair, or None."""
    left = list(_bits(b1))
    right = list(_bits(b2))
    r = m.r
    image = [0] * r

    def ok_at(k: int) -> bool:
        # every swap set C containing left[k], C within the assigned prefix
        kbit = 1 << left[k]
        ibit = 1 << image[k]
        for pick in range(1 << k):
            cmask, imask = kbit, ibit
            for t in _bits(pick):
                cmask |= 1 << left[t]
                imask |= 1 << image[t]
            if (b1 & ~cmask) | imask not in m.base_set:
                return False
        return True

    def search(k: int, used: int) -> bool:
        if k == r:
            return True
        for j, f in enumerate(right):
            if used >> j & 1:
                continue
            image[k] = f
            if ok_at(k) and search(k + 1, used | (1 << j)):
                return True
        return False

    if search(0, 0):
        return {left[k] + 1: image[k] + 1 for k in range(r)}
    return None
