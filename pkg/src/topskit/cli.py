"""Command-line interface.

Two command families:

* ``topskit rbw RHO --max-len L`` — enumerate reduced banned words of the
  two-map system at ratio RHO, given as ``p/q`` (or a decimal) or as an
  algebraic number ``poly:[c0,c1,...]@[lo,hi]``.
* ``topskit gifs {validate,classify,upsilon,invariance,orderings,top-address}
  CONFIG`` — analyze a graph-directed system.  CONFIG is a JSON file path or
  the name of a bundled example.

Reports go to stdout as JSON (default) or tab-delimited text; the region and
classification commands can also emit an SVG diagram (``--format svg``) or
write one to a file alongside the report (``--figure PATH``).  Identical
invocations produce byte-identical output.

Exit codes: 0 success, 2 parse error, 3 validation failure, 4 uncertified
hulls.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import configs as bundled_configs
from .exactnum import ExactReal, ValidationError
from .gifs import (
    ConfigError,
    GraphIFS,
    GraphValidationError,
    PathError,
    UncertifiedHullError,
    from_config,
    load_config,
)
from .rbw import enumerate_rbw
from .tops import (
    classify,
    invariance_verdict,
    ordering_search,
    top_address,
    upsilon_region,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_UNCERTIFIED = 4


class _CliParseError(Exception):
    pass


class _CliValidationError(Exception):
    pass


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise _CliParseError(f"not a number: {text!r} ({exc})") from exc


def parse_rho_spec(spec: str) -> ExactReal:
    """Parse ``p/q``, a decimal, or ``poly:[c0,c1,...]@[lo,hi]``."""
    spec = spec.strip()
    if spec.startswith("poly:"):
        body = spec[len("poly:") :]
        if "@" not in body:
            raise _CliParseError(
                "algebraic rho must look like poly:[c0,c1,...]@[lo,hi]"
            )
        poly_part, interval_part = body.split("@", 1)
        try:
            coeffs = json.loads(poly_part)
        except json.JSONDecodeError as exc:
            raise _CliParseError(f"bad coefficient list {poly_part!r}: {exc}") from exc
        if not isinstance(coeffs, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in coeffs
        ):
            raise _CliParseError("polynomial coefficients must be integers")
        interval_part = interval_part.strip()
        if not (interval_part.startswith("[") and interval_part.endswith("]")):
            raise _CliParseError("interval must look like [lo,hi]")
        pieces = interval_part[1:-1].split(",")
        if len(pieces) != 2:
            raise _CliParseError("interval must have exactly two endpoints")
        lo, hi = (_parse_fraction(p) for p in pieces)
        try:
            return ExactReal.algebraic(coeffs, (lo, hi))
        except ValidationError as exc:
            raise _CliParseError(f"bad algebraic number: {exc}") from exc
    return ExactReal(_parse_fraction(spec))


def _resolve_config(spec: str) -> GraphIFS:
    if os.path.exists(spec):
        return load_config(spec)
    try:
        data = bundled_configs.load_bundled(spec)
    except KeyError:
        known = ", ".join(bundled_configs.bundled_names())
        raise _CliParseError(
            f"{spec!r} is neither an existing file nor a bundled config "
            f"(bundled: {known})"
        ) from None
    return from_config(data)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _emit_json(data: dict) -> None:
    sys.stdout.write(json.dumps(data, indent=2) + "\n")


def _text_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, ExactReal):
        return str(value)
    return str(value)


def _emit_rows(rows: list[tuple]) -> None:
    for row in rows:
        sys.stdout.write("\t".join(_text_value(cell) for cell in row) + "\n")


def _rbw_text(report) -> list[tuple]:
    rows = [
        ("rho", report.rho),
        ("max_len", report.max_len),
        ("entries", len(report.entries)),
    ]
    for e in report.entries:
        rows.append(
            ("word", "".join(map(str, e.word)), e.endpoint, "equality" if e.equality else "strict")
        )
    rows.append(("finite_type_sufficient", report.finite_type_sufficient))
    rows.append(("truncated", report.truncated))
    for name, ok in report.lemma_checks.items():
        rows.append(("lemma", name, "pass" if ok else "FAIL"))
    rows.append(
        (
            "conjecture",
            "holds" if report.conjecture_status["holds_up_to_max_len"] else "FAILS",
        )
    )
    for p in report.patterns:
        rows.append(("pattern", p["i"], p["word"], p["pattern"], p["j"], p["k"]))
    for note in report.notes:
        rows.append(("note", note))
    return rows


def _interval_rows(tag: str, regions: dict) -> list[tuple]:
    rows = []
    for vertex, region in regions.items():
        if region.is_empty:
            rows.append((tag, vertex, "empty"))
        else:
            for lo, hi in region:
                rows.append((tag, vertex, lo, hi))
    return rows


def _figure_for(command: str, g: GraphIFS, result):
    from .diagrams import system_figure

    if command == "classify":
        highlight = None
        if result.witness_edges is not None:
            src = g.edge(result.witness_edges[0]).source
            highlight = (src, result.witness_interval)
        return system_figure(
            g,
            highlight=highlight,
            highlight_label="overlap",
            title=f"{g.name or 'system'}: {result.verdict}",
        )
    if command == "upsilon":
        return system_figure(
            g,
            region=result.regions,
            region_label=f"level-{result.n} region",
            title=f"{g.name or 'system'}: region up to level {result.n}",
        )
    # invariance
    region = upsilon_region(g, 1)
    witness = None
    if not result.shift_invariant:
        witness = (result.witness_vertex, result.witness_point)
    verdict = "shift invariant" if result.shift_invariant else "not shift invariant"
    return system_figure(
        g,
        region=region.regions,
        region_label="level-1 region",
        witness=witness,
        title=f"{g.name or 'system'}: {verdict}",
    )


def _emit_svg(fig) -> None:
    from .diagrams import render_svg_bytes

    sys.stdout.buffer.write(render_svg_bytes(fig))
    sys.stdout.buffer.flush()


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------


def _cmd_rbw(args) -> int:
    rho = parse_rho_spec(args.rho)
    try:
        report = enumerate_rbw(rho, args.max_len)
    except ValueError as exc:
        raise _CliValidationError(str(exc)) from exc
    if args.format == "json":
        _emit_json(report.to_json())
    else:
        _emit_rows(_rbw_text(report))
    return EXIT_OK


def _cmd_validate(args) -> int:
    g = _resolve_config(args.config)
    report = g.validate()
    if args.format == "json":
        _emit_json(report.to_json())
    else:
        rows = [("ok", report.ok)]
        rows += [("violation", v) for v in report.violations]
        if report.hulls is not None:
            for vertex, (lo, hi) in report.hulls.items():
                rows.append(
                    (
                        "hull",
                        vertex,
                        lo,
                        hi,
                        "exact" if report.exact[vertex] else "enclosure",
                    )
                )
        _emit_rows(rows)
    return EXIT_OK if report.ok else EXIT_VALIDATION


def _cmd_classify(args) -> int:
    g = _resolve_config(args.config)
    result = classify(g)
    if args.figure:
        from .diagrams import save_svg

        save_svg(_figure_for("classify", g, result), args.figure)
    if args.format == "svg":
        _emit_svg(_figure_for("classify", g, result))
    elif args.format == "json":
        _emit_json(result.to_json())
    else:
        rows = [("verdict", result.verdict)]
        if result.witness_edges is not None:
            rows.append(
                (
                    "witness",
                    result.witness_edges[0],
                    result.witness_edges[1],
                    result.witness_interval[0],
                    result.witness_interval[1],
                )
            )
        _emit_rows(rows)
    return EXIT_OK


def _cmd_upsilon(args) -> int:
    g = _resolve_config(args.config)
    if args.n < 1:
        raise _CliValidationError("--n must be at least 1")
    result = upsilon_region(g, args.n)
    if args.figure:
        from .diagrams import save_svg

        save_svg(_figure_for("upsilon", g, result), args.figure)
    if args.format == "svg":
        _emit_svg(_figure_for("upsilon", g, result))
    elif args.format == "json":
        _emit_json(result.to_json())
    else:
        rows = [("n", result.n), ("empty", result.is_empty())]
        rows += _interval_rows("region", result.regions)
        _emit_rows(rows)
    return EXIT_OK


def _cmd_invariance(args) -> int:
    g = _resolve_config(args.config)
    result = invariance_verdict(g)
    if args.figure:
        from .diagrams import save_svg

        save_svg(_figure_for("invariance", g, result), args.figure)
    if args.format == "svg":
        _emit_svg(_figure_for("invariance", g, result))
    elif args.format == "json":
        _emit_json(result.to_json())
    else:
        rows = [("shift_invariant", result.shift_invariant)]
        if not result.shift_invariant:
            rows.append(("witness_vertex", result.witness_vertex))
            rows.append(("witness_point", result.witness_point))
            rows.append(
                (
                    "witness_address",
                    "-" if result.witness_address is None else str(result.witness_address),
                )
            )
            if result.witness_prefix is not None:
                rows.append(
                    ("witness_prefix", ",".join(map(str, result.witness_prefix)))
                )
        _emit_rows(rows)
    return EXIT_OK


def _cmd_orderings(args) -> int:
    g = _resolve_config(args.config)
    try:
        report = ordering_search(
            g, sample=args.sample, seed=args.seed, threads=args.threads
        )
    except ValueError as exc:
        raise _CliValidationError(str(exc)) from exc
    if args.format == "json":
        _emit_json(report.to_json())
    else:
        rows = [
            ("total", report.total),
            ("evaluated", report.evaluated),
            ("sampled", report.sampled),
            ("invariant", report.invariant_count),
            ("not_invariant", report.noninvariant_count),
            (
                "invariant_example",
                "-"
                if report.invariant_example is None
                else ",".join(map(str, report.invariant_example)),
            ),
            (
                "noninvariant_example",
                "-"
                if report.noninvariant_example is None
                else ",".join(map(str, report.noninvariant_example)),
            ),
        ]
        if report.results is not None:
            for perm, invariant in report.results:
                rows.append(("labeling", ",".join(map(str, perm)), invariant))
        _emit_rows(rows)
    return EXIT_OK


def _cmd_top_address(args) -> int:
    g = _resolve_config(args.config)
    point = parse_rho_spec(args.point) if args.point.startswith("poly:") else None
    if point is None:
        point = ExactReal(_parse_fraction(args.point))
    try:
        result = top_address(g, point, args.vertex, args.depth)
    except ValueError as exc:
        raise _CliValidationError(str(exc)) from exc
    if args.format == "json":
        _emit_json(result.to_json())
    else:
        _emit_rows(
            [
                ("word", "".join(map(str, result.word)) if all(s <= 9 for s in result.word) else ",".join(map(str, result.word))),
                ("tail_point", result.tail_point),
                ("tail_vertex", result.tail_vertex),
            ]
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topskit",
        description="Exact fractal-top computations for graph-directed IFS on the line.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rbw = sub.add_parser(
        "rbw", help="enumerate reduced banned words of the two-map system"
    )
    p_rbw.add_argument("rho", help='ratio: "p/q", a decimal, or poly:[c0,...]@[lo,hi]')
    p_rbw.add_argument("--max-len", type=int, required=True, help="length bound")
    p_rbw.add_argument("--format", choices=("json", "text"), default="json")
    p_rbw.set_defaults(func=_cmd_rbw)

    p_gifs = sub.add_parser("gifs", help="analyze a graph-directed system")
    gsub = p_gifs.add_subparsers(dest="subcommand", required=True)

    def add_common(p, svg: bool = False):
        p.add_argument("config", help="JSON file path or bundled config name")
        formats = ("json", "text", "svg") if svg else ("json", "text")
        p.add_argument("--format", choices=formats, default="json")
        if svg:
            p.add_argument(
                "--figure", metavar="PATH", help="also write an SVG diagram here"
            )

    p = gsub.add_parser("validate", help="check the structural requirements")
    add_common(p)
    p.set_defaults(func=_cmd_validate)

    p = gsub.add_parser("classify", help="totally disconnected / just touching / overlapping")
    add_common(p, svg=True)
    p.set_defaults(func=_cmd_classify)

    p = gsub.add_parser("upsilon", help="region of points whose addresses obstruct shift invariance")
    add_common(p, svg=True)
    p.add_argument("--n", type=int, default=1, help="accumulate levels 1..n")
    p.set_defaults(func=_cmd_upsilon)

    p = gsub.add_parser("invariance", help="decide shift invariance of the top-address set")
    add_common(p, svg=True)
    p.set_defaults(func=_cmd_invariance)

    p = gsub.add_parser("orderings", help="evaluate invariance for edge relabelings")
    add_common(p)
    p.add_argument("--sample", type=int, default=None, help="evaluate this many sampled labelings")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("TOPSKIT_THREADS", "1")),
        help="worker processes (default: TOPSKIT_THREADS or 1)",
    )
    p.set_defaults(func=_cmd_orderings)

    p = gsub.add_parser("top-address", help="greedy top address of a point")
    add_common(p)
    p.add_argument("--point", required=True, help="exact point (p/q, decimal, or poly:...)")
    p.add_argument("--vertex", required=True, help="component vertex name")
    p.add_argument("--depth", type=int, required=True, help="number of symbols")
    p.set_defaults(func=_cmd_top_address)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _CliValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (GraphValidationError, PathError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except UncertifiedHullError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED


if __name__ == "__main__":
    sys.exit(main())
