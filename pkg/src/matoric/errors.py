"""Exception types shared across the package."""

from __future__ import annotations


class MatroidError(Exception):
    """Base class for all errors raised by this package."""


class GroundSetTooLarge(MatroidError):
    """Ground set exceeds the 64-element bit-mask bound."""


class RankOutOfRange(MatroidError):
    """Requested rank is not within 0..n."""


class NotEquicardinal(MatroidError):
    """A candidate base does not have exactly r elements."""

    def __init__(self, base: tuple[int, ...], expected: int):
        self.base = base
        self.expected = expected
        super().__init__(f"base {set(base)} does not have {expected} elements")


class ExchangeAxiomViolated(MatroidError):
    """The basis exchange axiom fails; carries a witness triple."""

    def __init__(self, base1: tuple[int, ...], base2: tuple[int, ...], element: int):
        self.base1 = base1
        self.base2 = base2
        self.element = element
        super().__init__(
            f"no exchange for element {element} of {set(base1)} against {set(base2)}"
        )


class EmptyPresentation(MatroidError):
    """A transversal presentation contains no sets or an empty set."""


class InvalidSubset(MatroidError):
    """A delete/contract/restrict argument is not a proper subset of the ground set."""


class NotABase(MatroidError):
    """A pair-class argument is not a base of the matroid."""


class IdenticalBases(MatroidError):
    """A pair-class query needs two distinct bases."""


class RankTooLargeForExhaustiveSearch(MatroidError):
    """Strong base orderability search is capped at rank 8."""


class TargetLargerThanHost(MatroidError):
    """Minor target has more elements than the host matroid."""


class NotRankTwo(MatroidError):
    """The parallel-class graph is defined for rank-2 matroids only."""


class SearchFailed(MatroidError):
    """An atlas search found no matroid with the requested property."""


class BudgetExceeded(MatroidError):
    """An enumeration or search exceeds the configured ground-set budget."""


class FiberCapExceeded(MatroidError):
    """The truncated fiber scan would enumerate more monomials than the cap allows."""


class ParseError(MatroidError):
    """A matroid file or CLI argument cannot be parsed."""
