"""Command-line driver.

Every subcommand writes one JSON report (keys sorted, rationals in lowest
terms) to stdout.  Exit codes: 0 success, 1 domain error (reported as
structured JSON), 2 malformed input or usage error (diagnostics on
stderr).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import TropcylError
from .extension import (
    cylinder_in_b,
    del_pezzo_base,
    extend,
    family_spine,
    trace_points,
)
from .lattice import build_base, fan_closure, intersection_matrix, is_positive, monodromy
from .serialize import (
    SchemaError,
    curve_class_to_json,
    cylinder_to_json,
    frac_to_str,
    pair_from_json,
    parse_frac,
    spine_from_json,
    spine_to_json,
)
from .wallcross import CountQuery, binomial_oracle, count, count_spine, symmetry_check
from . import wallcross
from .errors import InvalidQuery
from .spines import validate_spine


def _emit(report: dict) -> None:
    print(json.dumps(report, sort_keys=True))


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def cmd_base(args) -> int:
    pair = pair_from_json(_load_json(args.pair_file))
    base = build_base(pair)
    mono = monodromy(base)
    closure = fan_closure(pair)
    report = {
        "pair": list(pair.self_intersections),
        "cones": base.l,
        "walls": base.l,
        "monodromy": mono.rows(),
        "monodromy_is_identity": mono.is_identity,
        "monodromy_trace": mono.trace(),
        "fan_closure": None if closure is None else [list(v) for v in closure],
        "intersection_matrix": intersection_matrix(pair),
        "positive": is_positive(pair),
    }
    _emit(report)
    return 0


def cmd_validate(args) -> int:
    pair = pair_from_json(_load_json(args.pair_file))
    base = build_base(pair)
    spine = spine_from_json(base, _load_json(args.spine_file))
    violations = validate_spine(base, spine)
    report = {
        "valid": not violations,
        "violations": [
            {"code": v.code, "where": v.where, "message": v.message}
            for v in violations
        ],
    }
    _emit(report)
    return 0 if not violations else 1


def cmd_extend(args) -> int:
    pair = pair_from_json(_load_json(args.pair_file))
    base = build_base(pair)
    spine = spine_from_json(base, _load_json(args.spine_file))
    result = extend(base, spine, max_steps=args.max_steps)
    cylinder = cylinder_in_b(base, result.extended)
    report = {
        "extendable": True,
        "steps": result.steps,
        "curve_class": curve_class_to_json(result.curve_class),
        "extended_spine": spine_to_json(result.extended),
        "cylinder": cylinder_to_json(cylinder),
    }
    _emit(report)
    return 0


def cmd_count(args) -> int:
    q = CountQuery(args.l, args.m, args.n)
    if args.b is not None:
        b = parse_frac(args.b)
        spine = family_spine(args.l, args.m, args.n, b)
        value = count_spine(del_pezzo_base(), spine)
    else:
        value = count(q)
    oracle = binomial_oracle(args.l, args.n) if args.l <= 20 else None
    report = {
        "l": args.l,
        "m": args.m,
        "n": args.n,
        "count": value,
        "oracle": oracle,
        "match": (value == oracle) if oracle is not None else None,
        "symmetry": symmetry_check(q),
    }
    if args.b is not None:
        report["b"] = frac_to_str(parse_frac(args.b))
    _emit(report)
    return 0


def cmd_symmetry(args) -> int:
    q = CountQuery(args.l, args.m, args.n)
    forward = count(q)
    symmetric = symmetry_check(q)
    report = {
        "l": args.l,
        "m": args.m,
        "n": args.n,
        "forward": forward,
        "backward": forward if symmetric else None,
        "symmetric": symmetric,
    }
    _emit(report)
    return 0 if symmetric else 1


def cmd_trace(args) -> int:
    b = parse_frac(args.b)
    samples = trace_points(args.l, args.m, args.n, b,
                           [parse_frac(ts) for ts in args.t.split(",") if ts])
    points = []
    for sample in samples:
        p = sample.point
        if p.is_origin:
            points.append({"t": frac_to_str(sample.t), "origin": True})
        else:
            points.append({
                "t": frac_to_str(sample.t),
                "cone": p.cone,
                "coords": [frac_to_str(p.a), frac_to_str(p.b)],
            })
    report = {"l": args.l, "m": args.m, "n": args.n, "b": frac_to_str(b),
              "points": points}
    _emit(report)
    return 0


def emit_table(l_max: int, m_values) -> dict:
    """Count table rows for l = 0..l_max, cross-checked against the oracle."""
    if l_max < 1:
        raise InvalidQuery(f"table needs l_max >= 1, got {l_max}")
    if l_max > 20:
        raise InvalidQuery(f"table is capped at l_max = 20, got {l_max}")
    rows = []
    for m in m_values:
        for l in range(0, l_max + 1):
            counts = [wallcross._raw_count(l, m, n) for n in range(l + 1)]
            expected = [binomial_oracle(l, n) for n in range(l + 1)]
            if counts != expected:
                raise InvalidQuery(
                    f"engine/oracle mismatch at l={l}, m={m}: "
                    f"{counts} vs {expected}")
            rows.append({"l": l, "m": m, "counts": counts})
    return {"l_max": l_max, "m_values": list(m_values), "rows": rows,
            "verified": True}


def cmd_table(args) -> int:
    m_values = list(range(args.m_min, args.m_max + 1))
    report = emit_table(args.l_max, m_values)
    text = json.dumps(report, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropcyl",
        description="Tropical bases, spines, extensions and wall-crossing counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("base", help="analyze a pair: monodromy, fan closure, positivity")
    p.add_argument("pair_file")
    p.set_defaults(func=cmd_base)

    p = sub.add_parser("validate", help="check the spine conditions")
    p.add_argument("pair_file")
    p.add_argument("spine_file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("extend", help="extend a spine and build its cylinder")
    p.add_argument("pair_file")
    p.add_argument("spine_file")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("count", help="cylinder count of the family L(l, m, n)")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", default=None,
                   help="optional height p/q: count through the spine matcher")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("symmetry", help="orientation symmetry of a count")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("trace", help="points of the explicit family trace")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", required=True, help="height p/q of the central vertex")
    p.add_argument("--t", required=True,
                   help="comma-separated parameter values p/q; use the "
                        "--t=-1,0,1/2 form for a leading negative value")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("table", help="binomial count table with oracle cross-check")
    p.add_argument("--l-max", type=int, required=True)
    p.add_argument("--m-min", type=int, default=0)
    p.add_argument("--m-max", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_table)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (SchemaError, OSError, json.JSONDecodeError) as exc:
        print(f"tropcyl: {exc}", file=sys.stderr)
        return 2
    except TropcylError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
