"""Command-line surface: every operation behind one verb, text or JSON out.

Exit codes: 0 success (or property true), 1 property false / minor absent,
2 input errors, 3 budget or truncation limits.  Identical invocations print
byte-identical output; everything is ordered deterministically.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import atlas, fibers, formats, minors, toric
from .core import (
    Matroid,
    bases_cobases,
    basis_graph_diameter,
    connected_components,
    elements_from_mask,
    simplify_loops_coloops,
    strongly_base_orderable,
    uniform,
)
from .errors import (
    BudgetExceeded,
    FiberCapExceeded,
    InvalidSubset,
    MatroidError,
    ParseError,
    RankTooLargeForExhaustiveSearch,
)

CACHE_ENV = "MATORIC_CACHE_DIR"

_TARGET_RE = re.compile(r"^uniform:(\d+),(\d+)$")


def _load(args) -> Matroid:
    return formats.load_file(args.file, args.subset_order)


def _cache_dir(args) -> str | None:
    return args.cache or os.environ.get(CACHE_ENV)


def _parse_pair(text: str) -> tuple[list[int], list[int]]:
    parts = text.split(";")
    if len(parts) != 2:
        raise ParseError('expected two bases separated by ";", e.g. "1 2;3 4"')
    try:
        return [int(x) for x in parts[0].split()], [int(x) for x in parts[1].split()]
    except ValueError as exc:
        raise ParseError(f"bad element in pair: {exc}") from None


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_validate(args) -> int:
    m = _load(args)
    print(f"valid: n={m.n} rank={m.r} bases={len(m.bases)}")
    return 0


def _info_payload(m: Matroid) -> dict:
    c, _ = connected_components(m)
    return {
        "n": m.n,
        "rank": m.r,
        "bases": len(m.bases),
        "components": c,
        "loops": sorted(m.loops()),
        "coloops": sorted(m.coloops()),
        "height": toric.height(m),
        "basis_graph_diameter": basis_graph_diameter(m),
        "bases_cobases": bases_cobases(m),
    }


def _cmd_info(args) -> int:
    payload = _info_payload(_load(args))
    if args.json:
        _emit_json(payload)
        return 0
    for key in ("n", "rank", "bases", "components"):
        print(f"{key}: {payload[key]}")
    for key in ("loops", "coloops"):
        values = payload[key]
        print(f"{key}: {' '.join(map(str, values)) if values else '-'}")
    print(f"height: {payload['height']}")
    print(f"basis-graph-diameter: {payload['basis_graph_diameter']}")
    print(f"bases-cobases: {payload['bases_cobases']}")
    return 0


def _cmd_delta(args) -> int:
    m = _load(args)
    if args.pair:
        b1, b2 = _parse_pair(args.pair)
        cls = fibers.pair_class(m, b1, b2)
        if args.json:
            _emit_json(cls.to_json())
            return 0
        print(f"delta: {cls.delta}")
        print(f"distance: {cls.exchange_distance}")
        for d1, d2 in cls.members:
            left = " ".join(map(str, elements_from_mask(d1)))
            right = " ".join(map(str, elements_from_mask(d2)))
            print(f"member: {left} | {right}")
        return 0
    census = fibers.class_census(m)
    if args.json:
        _emit_json(fibers.census_to_json(census))
        return 0
    print(f"classes: {len(census)}")
    for cls in census:
        vec = " ".join(map(str, cls.key))
        print(f"distance={cls.exchange_distance} delta={cls.delta} degree-vector=[{vec}]")
    return 0


def _cmd_markov(args) -> int:
    m = _load(args)
    report = toric.markov_basis(m, args.max_degree, args.cap)
    if args.json:
        _emit_json(report.to_json())
        return 0
    print(f"degree-bound: {report.degree_bound}")
    print(f"generators: {report.mu_truncated}")
    for d in range(2, report.degree_bound + 1):
        count = sum(1 for g in report.generators if g.degree == d)
        print(f"degree {d}: {count}")
    for g in report.generators:
        plus = ".".join("".join(map(str, elements_from_mask(b))) for b in g.plus)
        minus = ".".join("".join(map(str, elements_from_mask(b))) for b in g.minus)
        print(f"generator: y[{plus}] - y[{minus}]")
    return 0


def _cmd_check(args) -> int:
    m = _load(args)
    if args.property == "binary":
        result = minors.is_binary(m)
        print("true" if result else "false")
        return 0 if result else 1
    if args.property == "u36":
        result = minors.has_u36_minor(m)
        print("true" if result else "false")
        return 0 if result else 1
    if args.property == "sbo":
        result = strongly_base_orderable(m).orderable
        print("true" if result else "false")
        return 0 if result else 1
    if args.property == "unique":
        verdict = toric.unique_generating_set(m)
        print("true" if verdict.unique else "false")
        if verdict.trivial:
            print("note: rank <= 1, the ideal is zero")
        else:
            print(f"binary: {str(verdict.binary).lower()}")
            print(f"diameter: {verdict.diameter}")
        return 0 if verdict.unique else 1
    # complete intersection
    try:
        simplified, report = simplify_loops_coloops(m)
    except InvalidSubset:
        print("true")
        print("status: ci-zero-ideal (only loops and coloops)")
        return 0
    verdict = toric.is_complete_intersection(simplified, args.degree_bound)
    if verdict.is_ci is True:
        print("true")
    elif verdict.is_ci is False:
        print("false")
    else:
        print("undetermined")
    print(f"status: {verdict.status}")
    print(f"height: {verdict.height}")
    print(f"mu-truncated: {verdict.mu_truncated}")
    if report.loops or report.coloops:
        removed = sorted(report.loops + report.coloops)
        print(f"simplified-away: {' '.join(map(str, removed))}")
    if verdict.is_ci is True:
        return 0
    if verdict.is_ci is False:
        return 1
    return 3


def _cmd_enumerate(args) -> int:
    reps = atlas.enumerate_matroids(args.n, args.r, _cache_dir(args))
    if args.count_only:
        print(len(reps))
        return 0
    for m in reps:
        print(formats.format_bitstring_line(m))
    return 0


def _cmd_search(args) -> int:
    matches = atlas.search_bases_cobases(args.n, args.r, args.bases_cobases,
                                         _cache_dir(args))
    for m in matches:
        print(formats.format_bitstring_line(m))
    return 0


def _cmd_counterexample(args) -> int:
    m = minors.build_d5_counterexample(_cache_dir(args))
    complementary = next(
        b for b in m.bases if m.contains_base(m.full_mask & ~b)
    )
    cls = fibers.pair_class(m, complementary, m.full_mask & ~complementary)
    payload = {
        "n": m.n,
        "rank": m.r,
        "bases": len(m.bases),
        "bases_cobases": bases_cobases(m),
        "complementary_pair_delta": cls.delta,
        "u510_minor": "absent",
        "bitstring": formats.format_bitstring_line(m),
    }
    if args.json:
        _emit_json(payload)
        return 0
    for key in ("n", "rank", "bases", "bases_cobases", "complementary_pair_delta"):
        print(f"{key.replace('_', '-')}: {payload[key]}")
    print("u510-minor: absent")
    return 0


def _cmd_minor(args) -> int:
    m = _load(args)
    match = _TARGET_RE.match(args.target)
    if not match:
        raise ParseError(f"unsupported target {args.target!r}; use uniform:R,N")
    r, n = int(match.group(1)), int(match.group(2))
    witness = minors.has_minor(m, uniform(r, n))
    if witness is None:
        print("no minor")
        return 1
    if args.json:
        _emit_json(witness.to_json())
        return 0
    print("minor found")
    print(f"delete: {' '.join(map(str, witness.delete_set)) or '-'}")
    print(f"contract: {' '.join(map(str, witness.contract_set)) or '-'}")
    print(f"iso: {' '.join(map(str, witness.iso))}")
    return 0


def _parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--subset-order", choices=("lex", "colex"), default="lex",
                        help="subset ordering for bitstring files")
    shared.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; execution is sequential")

    parser = argparse.ArgumentParser(
        prog="matoric",
        description="Combinatorics of toric ideals of matroids.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", parents=[shared], help="parse and validate a matroid file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("info", parents=[shared], help="summary invariants")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("delta", parents=[shared], help="pair class sizes")
    p.add_argument("file")
    p.add_argument("--pair", help='two bases, e.g. "1 2;3 4"')
    p.add_argument("--census", action="store_true",
                   help="full class census (default when --pair is absent)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("markov", parents=[shared],
                       help="degree-truncated minimal binomial generators")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--cap", type=int, default=toric.DEFAULT_MONOMIAL_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_markov)

    p = sub.add_parser("check", parents=[shared], help="decision procedures")
    p.add_argument("file")
    p.add_argument("--property", required=True,
                   choices=("binary", "u36", "ci", "unique", "sbo"))
    p.add_argument("--degree-bound", type=int, default=4,
                   help="truncation degree for the ci check")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("enumerate", parents=[shared],
                       help="all isomorphism classes for (n, r)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--cache", help=f"cache directory (or ${CACHE_ENV})")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("search", parents=[shared],
                       help="classes with a prescribed bases-cobases count")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--bases-cobases", type=int, required=True)
    p.add_argument("--cache", help=f"cache directory (or ${CACHE_ENV})")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("counterexample-d5", parents=[shared],
                       help="the rank-6 matroid with Delta = 126 and no U(5,10) minor")
    p.add_argument("--cache", help=f"cache directory (or ${CACHE_ENV})")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_counterexample)

    p = sub.add_parser("minor", parents=[shared], help="uniform-minor search")
    p.add_argument("file")
    p.add_argument("--target", required=True, help="uniform:R,N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_minor)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, FiberCapExceeded, RankTooLargeForExhaustiveSearch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MatroidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
