"""Isomorph-free atlases of small matroids.

Canonical forms: the signature of a matroid is the lexicographically least
bases bitstring (positions indexed by r-subsets in lex order) over all ground
set permutations.  For n <= 8 the whole permutation group is scanned in one
vectorized pass over precomputed mask-relabelling tables; n = 9, 10 fall back
to the same scan in chunks.

Enumeration: the default regime builds all matroids on n elements from the
atlas on n-1 elements by adding the new element as a loop, as a coloop, or by
a proper single-element extension.  Proper extensions are enumerated through
linear subclasses of copoints (sets of rank-(r-1) flats closed under modular
pairs); each subclass determines which independent (r-1)-sets span the new
element into a base.  A brute-force regime that scans every subset of the
possible bases is kept for n <= 6 and used to validate the extension
machinery.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Iterator

import numpy as np

from .core import (
    Matroid,
    bases_cobases,
    basis_graph_diameter,
    mask_from_elements,
    simplify_loops_coloops,
    uniform,
)
from .errors import BudgetExceeded, GroundSetTooLarge, InvalidSubset, ParseError
from .formats import format_bitstring_line, parse_bitstring_line

CANONICAL_MAX_GROUND = 10
ENUMERATION_MAX_GROUND = 8
NAIVE_MAX_GROUND = 6

_CHUNK = 100_000


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical signature plus one witness relabelling achieving it."""

    n: int
    r: int
    signature: str
    permutation: tuple[int, ...]


@lru_cache(maxsize=16)
def _perm_array(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


@lru_cache(maxsize=16)
def _perm_mask_table(n: int) -> np.ndarray:
    """(n!, 2^n) table: relabelled mask for every permutation and mask."""
    perms = _perm_array(n)
    masks = np.arange(1 << n, dtype=np.uint16)
    tab = np.zeros((perms.shape[0], 1 << n), dtype=np.uint16)
    for i in range(n):
        bit = ((masks >> i) & 1).astype(np.uint16)
        tab |= bit[None, :] << perms[:, i][:, None].astype(np.uint16)
    return tab


@lru_cache(maxsize=64)
def _lex_position_table(n: int, r: int) -> np.ndarray:
    """Mask -> index of the subset among r-subsets in lex order (-1 elsewhere)."""
    table = np.full(1 << n, -1, dtype=np.int64)
    for idx, combo in enumerate(itertools.combinations(range(1, n + 1), r)):
        table[mask_from_elements(combo)] = idx
    return table


def matroid_from_signature(n: int, r: int, signature: str) -> Matroid:
    """Decode a bases bitstring back into a matroid (unvalidated)."""
    combos = list(itertools.combinations(range(1, n + 1), r))
    if len(signature) != len(combos):
        raise ParseError(f"signature length {len(signature)} != C({n},{r})")
    masks = tuple(
        sorted(mask_from_elements(combos[i]) for i, c in enumerate(signature) if c == "1")
    )
    return Matroid(n, r, masks)


def relabel(m: Matroid, permutation: Iterable[int]) -> Matroid:
    """Apply a relabelling; ``permutation[i-1]`` is the new label of element i."""
    perm = tuple(permutation)
    if sorted(perm) != list(range(1, m.n + 1)):
        raise InvalidSubset(f"not a permutation of 1..{m.n}")
    masks = []
    for b in m.bases:
        out = 0
        mask = b
        while mask:
            low = mask & -mask
            out |= 1 << (perm[low.bit_length() - 1] - 1)
            mask ^= low
        masks.append(out)
    return Matroid(m.n, m.r, tuple(sorted(masks)))


def _scan_chunk(perms: np.ndarray, bm: np.ndarray, lexpos: np.ndarray,
                n: int, n_positions: int, mapped: np.ndarray | None = None):
    """Best (packed bits, bitstring row, witness perm) within one permutation chunk."""
    if mapped is None:
        mapped = np.zeros((perms.shape[0], bm.shape[0]), dtype=np.int64)
        for i in range(n):
            bit = (bm >> i) & 1
            mapped |= bit[None, :] << perms[:, i][:, None]
    pos = lexpos[mapped]
    rows = np.repeat(np.arange(perms.shape[0]), bm.shape[0])
    bits = np.zeros((perms.shape[0], n_positions), dtype=np.uint8)
    bits[rows, pos.ravel()] = 1
    packed = np.packbits(bits, axis=1)
    order = np.lexsort(packed.T[::-1])
    best = packed[order[0]]
    ties = np.flatnonzero((packed == best).all(axis=1))
    winner = ties[np.lexsort(perms[ties].T[::-1])[0]]
    return best.tobytes(), bits[winner], perms[winner]


@lru_cache(maxsize=1 << 17)
def _canonical_cached(m: Matroid) -> CanonicalForm:
    n, r = m.n, m.r
    lexpos = _lex_position_table(n, r)
    n_positions = comb(n, r)
    bm = np.fromiter(m.bases, dtype=np.int64, count=len(m.bases))
    if n <= ENUMERATION_MAX_GROUND:
        perms = _perm_array(n)
        mapped = _perm_mask_table(n)[:, bm].astype(np.int64)
        _, bits, perm = _scan_chunk(perms, bm, lexpos, n, n_positions, mapped)
    else:
        best = None
        source = itertools.permutations(range(n))
        while True:
            chunk = list(itertools.islice(source, _CHUNK))
            if not chunk:
                break
            perms = np.array(chunk, dtype=np.int64)
            key, bits_c, perm_c = _scan_chunk(perms, bm, lexpos, n, n_positions)
            cand = (key, tuple(int(x) for x in perm_c))
            if best is None or cand < (best[0], best[1]):
                best = (cand[0], cand[1], bits_c)
        bits, perm = best[2], np.array(best[1])
    signature = "".join("1" if v else "0" for v in bits)
    return CanonicalForm(n, r, signature, tuple(int(x) + 1 for x in perm))


def canonical_form(m: Matroid) -> CanonicalForm:
    """Canonical form of a matroid with at most 10 elements."""
    if m.n > CANONICAL_MAX_GROUND:
        raise GroundSetTooLarge(
            f"canonical forms are limited to n <= {CANONICAL_MAX_GROUND}"
        )
    return _canonical_cached(m)


def is_isomorphic(m1: Matroid, m2: Matroid) -> bool:
    """Isomorphism test by signature comparison."""
    if (m1.n, m1.r, len(m1.bases)) != (m2.n, m2.r, len(m2.bases)):
        return False
    if m1.bases == m2.bases:
        return True
    return canonical_form(m1).signature == canonical_form(m2).signature


# ---------------------------------------------------------------------------
# single-element extensions via linear subclasses


def _rank_table(m: Matroid) -> list[int]:
    size = 1 << m.n
    table = [0] * size
    for mask in range(size):
        table[mask] = max((b & mask).bit_count() for b in m.bases)
    return table


def _extensions(parent: Matroid) -> Iterator[tuple[int, ...]]:
    """Base families of every proper single-element extension of ``parent``.

    The new element (index n+1) is neither a loop nor a coloop; its bases are
    S + e for the independent (r-1)-sets S whose closure avoids the chosen
    linear subclass of copoints.
    """
    n, r = parent.n, parent.r
    full = (1 << n) - 1
    rank = _rank_table(parent)

    def closure(mask: int) -> int:
        cl = mask
        rest = full & ~mask
        rk = rank[mask]
        while rest:
            low = rest & -rest
            if rank[mask | low] == rk:
                cl |= low
            rest ^= low
        return cl

    copoints: list[int] = []
    seen = set()
    for mask in range(full + 1):
        if rank[mask] == r - 1:
            cl = closure(mask)
            if cl not in seen:
                seen.add(cl)
                copoints.append(cl)
    copoints.sort()
    index_of = {cp: i for i, cp in enumerate(copoints)}
    k = len(copoints)

    sets_by_copoint: list[list[int]] = [[] for _ in range(k)]
    for combo in itertools.combinations(range(n), r - 1):
        mask = sum(1 << i for i in combo)
        if rank[mask] == r - 1:
            sets_by_copoint[index_of[closure(mask)]].append(mask)

    partners: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            meet = copoints[i] & copoints[j]
            if rank[meet] == r - 2:
                sup = 0
                for t, cp in enumerate(copoints):
                    if cp & meet == meet:
                        sup |= 1 << t
                partners[i].append((j, sup))
                partners[j].append((i, sup))

    newbit = 1 << n
    all_mask = (1 << k) - 1

    def subclasses(in_mask: int, decided: int) -> Iterator[int]:
        undecided = all_mask & ~decided
        if not undecided:
            yield in_mask
            return
        pick = (undecided & -undecided).bit_length() - 1
        pbit = 1 << pick
        yield from subclasses(in_mask, decided | pbit)
        new_in, new_dec = in_mask | pbit, decided | pbit
        queue = [pick]
        consistent = True
        while queue and consistent:
            i = queue.pop()
            for j, sup in partners[i]:
                if new_in >> j & 1:
                    need = sup & ~new_in
                    if need:
                        if need & new_dec:
                            consistent = False
                            break
                        new_in |= need
                        new_dec |= need
                        rest = need
                        while rest:
                            low = rest & -rest
                            queue.append(low.bit_length() - 1)
                            rest ^= low
        if consistent:
            yield from subclasses(new_in, new_dec)

    for chosen in subclasses(0, 0):
        added = []
        for i in range(k):
            if not chosen >> i & 1:
                added.extend(sets_by_copoint[i])
        if not added:
            continue  # the new element would be a loop; handled separately
        yield tuple(sorted(parent.bases + tuple(s | newbit for s in added)))


# ---------------------------------------------------------------------------
# enumeration regimes

_ENUM_MEMO: dict[tuple[int, int], tuple[Matroid, ...]] = {}


def _cache_path(cache_dir: str, n: int, r: int) -> str:
    return os.path.join(cache_dir, f"matroids-{n}-{r}.txt")


def _load_cache(path: str, n: int, r: int) -> tuple[Matroid, ...]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            m = parse_bitstring_line(line)
            if (m.n, m.r) != (n, r):
                raise ParseError(f"cache line for ({m.n},{m.r}) in {path}")
            out.append(m)
    return tuple(out)


def _write_cache(path: str, reps: tuple[Matroid, ...]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for m in reps:
            fh.write(format_bitstring_line(m) + "\n")


def enumerate_matroids(n: int, r: int, cache_dir: str | None = None) -> tuple[Matroid, ...]:
    """All isomorphism classes of rank-r matroids on n elements.

    Results are canonically labelled representatives in signature order.  The
    regime is the single-element-extension recursion; ``cache_dir`` persists
    each (n, r) layer as a bitstring file.
    """
    if n < 1 or not 0 <= r <= n:
        raise BudgetExceeded(f"no matroids with n={n}, r={r}")
    if n > ENUMERATION_MAX_GROUND:
        raise BudgetExceeded(
            f"enumeration is budgeted up to n = {ENUMERATION_MAX_GROUND}"
        )
    key = (n, r)
    if key in _ENUM_MEMO:
        return _ENUM_MEMO[key]
    if cache_dir is not None:
        path = _cache_path(cache_dir, n, r)
        if os.path.exists(path):
            reps = _load_cache(path, n, r)
            _ENUM_MEMO[key] = reps
            return reps

    if r == 0:
        reps = (Matroid(n, 0, (0,)),)
    elif r == n:
        reps = (Matroid(n, n, ((1 << n) - 1,)),)
    else:
        found: dict[str, None] = {}

        def add(masks: tuple[int, ...]) -> None:
            cf = canonical_form(Matroid(n, r, masks))
            if cf.signature not in found:
                found[cf.signature] = None

        for parent in enumerate_matroids(n - 1, r, cache_dir):
            add(parent.bases)  # new element is a loop
            for masks in _extensions(parent):
                add(masks)
        newbit = 1 << (n - 1)
        for parent in enumerate_matroids(n - 1, r - 1, cache_dir):
            add(tuple(sorted(b | newbit for b in parent.bases)))
        reps = tuple(
            matroid_from_signature(n, r, sig) for sig in sorted(found)
        )

    if cache_dir is not None:
        _write_cache(_cache_path(cache_dir, n, r), reps)
    _ENUM_MEMO[key] = reps
    return reps


def enumerate_naive(n: int, r: int) -> tuple[Matroid, ...]:
    """Brute-force regime: scan every subset of the possible bases.

    Exchange validity is filtered vectorized over all 2^C(n,r) base families,
    then isomorphism classes are collapsed by orbit marking.  Kept as the
    independent check of the extension regime; bounded at n <= 6.
    """
    if n < 1 or not 0 <= r <= n:
        raise BudgetExceeded(f"no matroids with n={n}, r={r}")
    if n > NAIVE_MAX_GROUND:
        raise BudgetExceeded(f"naive regime is budgeted up to n = {NAIVE_MAX_GROUND}")
    combos = list(itertools.combinations(range(1, n + 1), r))
    masks = [mask_from_elements(c) for c in combos]
    position = {mask: i for i, mask in enumerate(masks)}
    count = len(combos)

    families = np.arange(1, 1 << count, dtype=np.uint32)
    valid = np.ones(families.shape, dtype=bool)
    for i, bi in enumerate(masks):
        has_i = (families >> np.uint32(i)) & np.uint32(1)
        for j, bj in enumerate(masks):
            if i == j:
                continue
            both = (has_i & (families >> np.uint32(j))).astype(bool)
            if not both.any():
                continue
            only = bi & ~bj
            while only:
                low = only & -only
                only ^= low
                req = np.uint32(0)
                cand = bj & ~bi
                while cand:
                    fl = cand & -cand
                    cand ^= fl
                    swapped = (bi ^ low) | fl
                    if swapped in position:
                        req |= np.uint32(1 << position[swapped])
                valid &= ~(both & ((families & req) == 0))

    survivors = set(int(f) for f in families[valid])

    perm_positions = []
    for perm in itertools.permutations(range(1, n + 1)):
        table = [0] * count
        for p, combo in enumerate(combos):
            image = mask_from_elements(perm[e - 1] for e in combo)
            table[p] = position[image]
        perm_positions.append(table)

    def family_string(fam: int) -> str:
        return "".join("1" if fam >> p & 1 else "0" for p in range(count))

    reps = []
    while survivors:
        fam = min(survivors)
        orbit = set()
        for table in perm_positions:
            moved = 0
            rest = fam
            while rest:
                low = rest & -rest
                moved |= 1 << table[low.bit_length() - 1]
                rest ^= low
            orbit.add(moved)
        survivors -= orbit
        reps.append(min(family_string(f) for f in orbit))

    matroids = [matroid_from_signature(n, r, sig) for sig in sorted(reps)]
    return tuple(matroids)


def search_bases_cobases(n: int, r: int, count: int,
                         cache_dir: str | None = None) -> tuple[Matroid, ...]:
    """Classes of (n, r) matroids with exactly ``count`` bases that are cobases."""
    return tuple(
        m for m in enumerate_matroids(n, r, cache_dir) if bases_cobases(m) == count
    )


# ---------------------------------------------------------------------------
# registered whole-atlas consistency checks


@dataclass(frozen=True)
class ScanReport:
    """Outcome of one registered check over a whole atlas."""

    check: str
    total: int
    checked: int
    passed: int
    failures: tuple[tuple[Matroid, str], ...]
    flagged: tuple[Matroid, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _ci_reference_matroids() -> tuple[Matroid, ...]:
    from .core import from_bases

    m1 = from_bases(4, 2, [{1, 2}, {3, 4}, {1, 3}, {2, 4}])
    m2 = from_bases(4, 2, [{1, 2}, {3, 4}, {1, 3}, {2, 4}, {1, 4}])
    return m1, m2, uniform(2, 4)


def _check_binary_vs_minor(m: Matroid):
    from .minors import has_minor, is_binary

    witness = has_minor(m, uniform(2, 4)) if m.n >= 4 else None
    agree = is_binary(m) == (witness is None)
    return agree, None if agree else "binary flag disagrees with U(2,4) minor search", False


def _check_u36_vs_delta(m: Matroid):
    from .minors import has_minor, has_u36_minor

    witness = has_minor(m, uniform(3, 6)) if m.n >= 6 else None
    agree = has_u36_minor(m) == (witness is not None)
    return agree, None if agree else "Delta=10 flag disagrees with U(3,6) minor search", False


def _check_ci_classification(m: Matroid):
    from .toric import is_complete_intersection

    if m.loops() or m.coloops() or not 2 <= m.r <= m.n - 2:
        return True, None, False
    verdict = is_complete_intersection(m, 4)
    if verdict.status == "undetermined":
        return False, "truncated scan could not settle the CI question", False
    flagged = verdict.is_ci is True
    expected = any(is_isomorphic(m, ref) for ref in _ci_reference_matroids())
    ok = flagged == expected
    return ok, None if ok else f"CI verdict {verdict.status} unexpected here", flagged


def _check_uniqueness(m: Matroid):
    from .minors import is_binary
    from .toric import is_quadratically_generated, nu_quadratic, unique_generating_set

    if len(m.bases) < 2:
        return True, None, False
    if not is_quadratically_generated(m, 3).quadratic:
        return True, None, False
    nu = nu_quadratic(m)
    structural = is_binary(m) and basis_graph_diameter(m) <= 2
    ok = (nu == 1) == structural
    if ok and m.r >= 2:
        ok = unique_generating_set(m).unique == (nu == 1)
    return ok, None if ok else f"nu = {nu} against binary/diameter {structural}", False


def _check_delta_bounds(m: Matroid):
    from .fibers import delta_bounds_check

    if len(m.bases) < 2:
        return True, None, False
    report = delta_bounds_check(m)
    return report.holds, None if report.holds else f"violations: {report.violations[:3]}", False


def _check_cobase_bridge(m: Matroid):
    from .fibers import class_census, cobase_bridge

    for cls in class_census(m):
        for b1, b2 in cls.members:
            _, count = cobase_bridge(m, b1, b2)
            if count != 2 * cls.delta:
                return False, f"bridge count {count} != 2*{cls.delta}", False
    return True, None, False


def _ci_bool(m: Matroid) -> bool:
    from .toric import is_complete_intersection

    try:
        simplified, _ = simplify_loops_coloops(m)
    except InvalidSubset:
        return True  # only loops and coloops: zero ideal
    verdict = is_complete_intersection(simplified, 4)
    return verdict.is_ci is True


def _check_ci_heredity(m: Matroid):
    if m.n < 2 or m.n > 6:
        return True, None, False
    if not _ci_bool(m):
        return True, None, False
    for e in range(1, m.n + 1):
        if not _ci_bool(m.delete({e})):
            return False, f"deletion of {e} is not CI", True
        if not _ci_bool(m.contract({e})):
            return False, f"contraction of {e} is not CI", True
    return True, None, True


CHECKS: dict[str, Callable] = {
    "binary-vs-minor": _check_binary_vs_minor,
    "u36-vs-delta": _check_u36_vs_delta,
    "ci-classification": _check_ci_classification,
    "uniqueness": _check_uniqueness,
    "delta-bounds": _check_delta_bounds,
    "cobase-bridge": _check_cobase_bridge,
    "ci-heredity": _check_ci_heredity,
}


def scan(n_max: int, check: str, cache_dir: str | None = None,
         matroids: Iterable[Matroid] | None = None) -> ScanReport:
    """Run one registered check over every matroid with at most ``n_max``
    elements (or over an explicit corpus)."""
    if check not in CHECKS:
        raise KeyError(f"unknown check {check!r}; known: {sorted(CHECKS)}")
    fn = CHECKS[check]
    if matroids is None:
        if n_max > ENUMERATION_MAX_GROUND:
            raise BudgetExceeded(
                f"scans are budgeted up to n = {ENUMERATION_MAX_GROUND}"
            )
        matroids = (
            m
            for n in range(1, n_max + 1)
            for r in range(0, n + 1)
            for m in enumerate_matroids(n, r, cache_dir)
        )
    total = checked = passed = 0
    failures = []
    flagged = []
    for m in matroids:
        total += 1
        ok, detail, flag = fn(m)
        checked += 1
        if flag:
            flagged.append(m)
        if ok:
            passed += 1
        else:
            failures.append((m, detail or "failed"))
    return ScanReport(check, total, checked, passed, tuple(failures), tuple(flagged))
