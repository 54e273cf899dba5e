"""Degree-truncated combinatorics of the matroid toric ideal.

The ideal itself is never materialized: every statement is about binomials
y_{B1}...y_{Bd} - y_{D1}...y_{Dd} whose two monomials share a degree vector
(multiset union of bases).  Minimal generators are selected degree by degree
through fiber graphs: within each fiber, monomials already connected by moves
from lower-degree generators need no new generator, and each remaining
component beyond the first contributes exactly one.

All verdicts carry their truncation degree; nothing here claims anything
about the ideal beyond the degree bound it was computed with.  The one
exception is soundness of "not a complete intersection": a truncated
generator count only undercounts, so exceeding the height is conclusive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import networkx as nx

from .core import (
    Matroid,
    basis_graph_diameter,
    connected_components,
    elements_from_mask,
    mask_from_elements,
)
from .errors import FiberCapExceeded, IdenticalBases, MatroidError, NotABase, NotRankTwo
from .fibers import DegreeVector, class_census, packed_base_vectors, unpack_degree_vector
from .minors import is_binary

DEFAULT_MONOMIAL_CAP = 5_000_000

Monomial = tuple[int, ...]  # non-decreasing base masks; length = degree


@dataclass(frozen=True)
class Binomial:
    """A difference of two monomials with equal degree vectors.

    Oriented canonically: ``plus`` is the lexicographically smaller monomial,
    so a generating set is a set of binomials up to sign.
    """

    plus: Monomial
    minus: Monomial

    @property
    def degree(self) -> int:
        return len(self.plus)

    def to_json(self) -> dict:
        return {
            "plus": [list(elements_from_mask(b)) for b in self.plus],
            "minus": [list(elements_from_mask(b)) for b in self.minus],
        }


def _oriented(u: Monomial, v: Monomial) -> Binomial:
    return Binomial(u, v) if u < v else Binomial(v, u)


@dataclass(frozen=True)
class GeneratorReport:
    """Minimal binomial generators of the ideal truncated at a degree bound.

    ``per_fiber`` maps the degree vector of every fiber holding at least two
    monomials to (fiber size, component count at processing time);
    ``mu_truncated`` is the total number of selected generators, i.e. the sum
    of (components - 1) over fibers.  ``degree2_complete`` records that every
    quadratic fiber was fully enumerated (the cap is all-or-nothing).
    """

    matroid: Matroid
    degree_bound: int
    generators: tuple[Binomial, ...]
    mu_truncated: int
    per_fiber: dict[DegreeVector, tuple[int, int]]
    degree2_complete: bool

    def to_json(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "mu_truncated": self.mu_truncated,
            "generators": [g.to_json() for g in self.generators],
            "fibers": [
                {"degree_vector": list(vec), "size": size, "components": comps}
                for vec, (size, comps) in sorted(self.per_fiber.items())
            ],
        }


def height(m: Matroid) -> int:
    """Height of the ideal: |bases| - (n - c + 1).

    n - c + 1 is the dimension of the base-monomial semigroup ring; the
    formula tolerates loops and coloops because each counts as its own
    connected component and cancels out.
    """
    c, _ = connected_components(m)
    return len(m.bases) - (m.n - c + 1)


def _remove_sub(monomial: Monomial, sub: Monomial) -> list[int]:
    out = list(monomial)
    for x in sub:
        out.remove(x)
    return out


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[Monomial, Monomial] = {}

    def add(self, x: Monomial) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: Monomial) -> Monomial:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Monomial, y: Monomial) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def markov_basis(m: Matroid, max_degree: int,
                 cap: int = DEFAULT_MONOMIAL_CAP) -> GeneratorReport:
    """Minimal binomial generators up to ``max_degree``, fiber by fiber.

    Degrees run from 2 upward.  A fiber's graph joins monomials u, v whenever
    v = u with one already-selected lower-degree generator applied; each
    fiber then contributes (components - 1) generators, star-joined from the
    lexicographically least monomial to the least monomial of every other
    component.  Quadratic fibers have no lower-degree moves, so they
    contribute exactly (size - 1) = Delta - 1 generators apiece.
    """
    if max_degree < 2:
        raise ValueError("the degree bound must be at least 2")
    b = len(m.bases)
    predicted = sum(comb(b + d - 1, d) for d in range(2, max_degree + 1))
    if predicted > cap:
        raise FiberCapExceeded(
            f"{predicted} monomials through degree {max_degree} exceed the cap {cap}"
        )

    packed_of = dict(zip(m.bases, packed_base_vectors(m)))
    generators: list[Binomial] = []
    per_fiber: dict[DegreeVector, tuple[int, int]] = {}
    # moves[sub-monomial] = replacements from selected lower-degree generators
    moves: dict[Monomial, list[Monomial]] = {}
    gen_degrees: set[int] = set()

    for degree in range(2, max_degree + 1):
        fibers: dict[int, list[Monomial]] = {}
        for mono in itertools.combinations_with_replacement(m.bases, degree):
            key = sum(packed_of[base] for base in mono)
            fibers.setdefault(key, []).append(mono)
        new_generators: list[Binomial] = []
        for key in sorted(fibers):
            members = fibers[key]  # already in lexicographic order
            if len(members) < 2:
                continue
            uf = _UnionFind()
            for mono in members:
                uf.add(mono)
            for mono in members:
                for gdeg in gen_degrees:
                    if gdeg >= degree:
                        continue
                    for sub in set(itertools.combinations(mono, gdeg)):
                        for replacement in moves.get(sub, ()):
                            neighbor = tuple(
                                sorted(_remove_sub(mono, sub) + list(replacement))
                            )
                            uf.union(mono, neighbor)
            components: dict[Monomial, Monomial] = {}
            for mono in members:
                root = uf.find(mono)
                if root not in components:
                    components[root] = mono  # least member: insertion order is lex
            reps = sorted(components.values())
            for other in reps[1:]:
                new_generators.append(_oriented(reps[0], other))
            per_fiber[unpack_degree_vector(key, m.n)] = (len(members), len(reps))
        for g in new_generators:
            generators.append(g)
            moves.setdefault(g.plus, []).append(g.minus)
            moves.setdefault(g.minus, []).append(g.plus)
            gen_degrees.add(g.degree)

    return GeneratorReport(
        matroid=m,
        degree_bound=max_degree,
        generators=tuple(generators),
        mu_truncated=len(generators),
        per_fiber=per_fiber,
        degree2_complete=True,
    )


def mu_formula(m: Matroid) -> int:
    """(b^2 - b - 2s) / 2 where s is the number of pair classes.

    Equals the number of quadratic minimal generators, since the b(b-1)/2
    unordered base pairs split into s classes contributing Delta - 1 each.
    """
    b = len(m.bases)
    s = len(class_census(m))
    return (b * b - b - 2 * s) // 2


def nu_quadratic(m: Matroid) -> int:
    """Product of Delta^(Delta-2) over all pair classes (exact big integer).

    Counts the minimal generating sets up to sign when the ideal is
    quadratically generated: each class contributes Cayley's count of trees
    on Delta labelled vertices, and classes choose independently.
    """
    result = 1
    for cls in class_census(m):
        if cls.delta >= 2:
            result *= cls.delta ** (cls.delta - 2)
    return result


def delta_from_generators(report: GeneratorReport, base1, base2) -> int:
    """Delta of a pair read off a generator report: 1 + the number of
    quadratic generators living in the pair's fiber."""
    m = report.matroid
    masks = []
    for base in (base1, base2):
        mask = base if isinstance(base, int) else mask_from_elements(base)
        if not m.contains_base(mask):
            raise NotABase(f"{sorted(elements_from_mask(mask))} is not a base")
        masks.append(mask)
    if masks[0] == masks[1]:
        raise IdenticalBases("the two bases coincide")
    packed_of = dict(zip(m.bases, packed_base_vectors(m)))
    key = packed_of[masks[0]] + packed_of[masks[1]]
    count = 0
    for g in report.generators:
        if g.degree == 2 and packed_of[g.plus[0]] + packed_of[g.plus[1]] == key:
            count += 1
    return 1 + count


@dataclass(frozen=True)
class QuadraticVerdict:
    """Whether the truncated generating set is purely quadratic."""

    quadratic: bool
    degree_bound: int
    witness: Binomial | None


def is_quadratically_generated(m: Matroid, max_degree: int,
                               cap: int = DEFAULT_MONOMIAL_CAP) -> QuadraticVerdict:
    """No generator of degree >= 3 up to the bound; the witness otherwise."""
    if max_degree < 3:
        raise ValueError("a meaningful truncation needs max_degree >= 3")
    report = markov_basis(m, max_degree, cap)
    for g in report.generators:
        if g.degree >= 3:
            return QuadraticVerdict(False, max_degree, g)
    return QuadraticVerdict(True, max_degree, None)


@dataclass(frozen=True)
class CIVerdict:
    """Complete-intersection verdict, explicit about truncation.

    status is one of "ci-zero-ideal" (rank outside [2, n-2]: the ideal is
    zero), "ci-up-to-degree" (mu on the truncated scan equals the height),
    "not-ci" (truncated mu already exceeds the height: certified, since the
    truncation only undercounts), or "undetermined" (mu still below the
    height at the bound).
    """

    status: str
    height: int
    mu_truncated: int | None
    degree_bound: int | None

    @property
    def is_ci(self) -> bool | None:
        if self.status in ("ci-zero-ideal", "ci-up-to-degree"):
            return True
        if self.status == "not-ci":
            return False
        return None


def is_complete_intersection(m: Matroid, max_degree: int = 4,
                             cap: int = DEFAULT_MONOMIAL_CAP) -> CIVerdict:
    """Compare the truncated generator count against the height.

    Expects a matroid with no loops and no coloops (simplify first); ranks
    outside [2, n-2] make the ideal zero, which is a complete intersection.
    The quadratic layer is tried first — its generator count is a census
    formula — so most negatives never touch higher degrees.
    """
    if m.loops() or m.coloops():
        raise MatroidError("apply simplify_loops_coloops before the CI check")
    ht = height(m)
    if not 2 <= m.r <= m.n - 2:
        return CIVerdict("ci-zero-ideal", ht, 0, None)
    mu2 = mu_formula(m)
    if mu2 > ht:
        return CIVerdict("not-ci", ht, mu2, 2)
    report = markov_basis(m, max_degree, cap)
    mu = report.mu_truncated
    if mu > ht:
        return CIVerdict("not-ci", ht, mu, max_degree)
    if mu == ht:
        return CIVerdict("ci-up-to-degree", ht, mu, max_degree)
    return CIVerdict("undetermined", ht, mu, max_degree)


@dataclass(frozen=True)
class UniqueVerdict:
    """Whether the ideal has a unique minimal binomial generating set
    (up to sign)."""

    unique: bool
    trivial: bool
    binary: bool | None
    diameter: int | None


def unique_generating_set(m: Matroid) -> UniqueVerdict:
    """Structural uniqueness test: binary and basis-graph diameter <= 2.

    Rank 0 and 1 ideals are zero, reported as trivially unique.  When the
    ideal is quadratically generated the answer matches nu_quadratic = 1.
    """
    if m.r <= 1:
        return UniqueVerdict(True, True, None, None)
    binary = is_binary(m)
    diameter = basis_graph_diameter(m)
    return UniqueVerdict(binary and diameter <= 2, False, binary, diameter)


def rank2_graph(m: Matroid) -> nx.Graph:
    """The graph on the ground set whose edges are the two-element bases."""
    if m.r != 2:
        raise NotRankTwo(f"rank is {m.r}")
    g = nx.Graph()
    g.add_nodes_from(range(1, m.n + 1))
    for base in m.bases:
        u, v = elements_from_mask(base)
        g.add_edge(u, v)
    return g


def contains_k23(g: nx.Graph) -> bool:
    """Whether the graph contains a complete bipartite 2x3 subgraph: some
    vertex pair with three common neighbours."""
    nodes = sorted(g.nodes)
    for u, v in itertools.combinations(nodes, 2):
        common = set(g.adj[u]) & set(g.adj[v])
        common.discard(u)
        common.discard(v)
        if len(common) >= 3:
            return True
    return False
