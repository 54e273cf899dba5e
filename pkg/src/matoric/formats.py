"""Text and bitstring interchange formats for matroids.

Text format: line 1 is ``n r``; each following non-comment line is one base
as space-separated 1-based elements; ``#`` starts a comment.

Bitstring format: one line ``n r <bits>`` where the bit at position i says
whether the i-th r-subset of {1..n} is a base.  Subsets are taken in
lexicographic order of their sorted tuples by default; colexicographic order
is available for compatibility with external matroid databases.
"""

from __future__ import annotations

import itertools
import re
from math import comb

from .core import Matroid, from_bases, mask_from_elements
from .errors import ParseError

_BITLINE = re.compile(r"^(\d+)\s+(\d+)\s+([01]+)$")


def subsets_in_order(n: int, r: int, order: str = "lex") -> list[tuple[int, ...]]:
    """All r-subsets of {1..n} in the requested order."""
    combos = list(itertools.combinations(range(1, n + 1), r))
    if order == "lex":
        return combos
    if order == "colex":
        return sorted(combos, key=lambda t: tuple(reversed(t)))
    raise ParseError(f"unknown subset order {order!r}")


def parse_text(text: str) -> Matroid:
    """Parse the multi-line text format (validated)."""
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines:
        raise ParseError("empty matroid file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"header must be 'n r', got {lines[0]!r}")
    try:
        n, r = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"header must be 'n r', got {lines[0]!r}") from None
    bases = []
    for line in lines[1:]:
        try:
            bases.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ParseError(f"bad base line {line!r}") from None
    return from_bases(n, r, bases)


def format_text(m: Matroid) -> str:
    """Render the text format in canonical base order."""
    lines = [f"{m.n} {m.r}"]
    lines.extend(" ".join(str(e) for e in base) for base in m.base_sets())
    return "\n".join(lines) + "\n"


def parse_bitstring_line(line: str, order: str = "lex") -> Matroid:
    """Parse one ``n r <bits>`` line (validated)."""
    match = _BITLINE.match(line.strip())
    if not match:
        raise ParseError(f"not a bitstring line: {line!r}")
    n, r = int(match.group(1)), int(match.group(2))
    bits = match.group(3)
    expected = comb(n, r)
    if len(bits) != expected:
        raise ParseError(f"expected {expected} bits for n={n} r={r}, got {len(bits)}")
    combos = subsets_in_order(n, r, order)
    bases = [combos[i] for i, c in enumerate(bits) if c == "1"]
    if not bases:
        raise ParseError("bitstring encodes no bases")
    return from_bases(n, r, bases)


def format_bitstring_line(m: Matroid, order: str = "lex") -> str:
    """Render one ``n r <bits>`` line."""
    bits = "".join(
        "1" if mask_from_elements(c) in m.base_set else "0"
        for c in subsets_in_order(m.n, m.r, order)
    )
    return f"{m.n} {m.r} {bits}"


def parse_any(text: str, order: str = "lex") -> Matroid:
    """Auto-detect the format: a first line matching ``n r <01-string>`` is
    treated as a bitstring, anything else as the text format."""
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if _BITLINE.match(stripped):
            return parse_bitstring_line(stripped, order)
        return parse_text(text)
    raise ParseError("empty matroid file")


def load_file(path: str, order: str = "lex") -> Matroid:
    """Load a matroid from a file in either format."""
    with open(path, encoding="utf-8") as fh:
        return parse_any(fh.read(), order)
