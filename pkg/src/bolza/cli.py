"""Command-line interface.

Exit status: 0 success, 1 a verification check failed, 2 usage error,
3 a numerical or ball error (the error class name is printed).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .errors import BolzaError
from .group import DEFAULT_MAX_ELEMENTS, enumerate_ball, systole
from .quotient import d0, dv, quotient_distance
from .render import render_tessellation_svg
from .report import ReportDocument, RunConfig, export_report
from .surface import surface_params
from .verify import CHECKS, diameter_estimate, literature_bounds, part_names, run_suite, with_tolerances

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_point(text: str) -> complex:
    """``"re,im"`` or a bare real number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im' or a real number, got {text!r}")


def parse_tolerance(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    try:
        if sep and name:
            return name, float(value)
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int, default=2)
    common.add_argument("--cutoff", type=float, default=None, help="ball radius (default 4R)")
    common.add_argument("--max-elements", type=int, default=None, help="cap on enumerated group elements")
    common.add_argument("--grid", type=int, default=100)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=parse_tolerance, action="append", default=[], metavar="NAME=VALUE")
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="bolza", description="Diameter of generalized Bolza surfaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("params", parents=[common], help="print R, s, R', s' and the area")
    for name, text in (("distance", "distance between [z] and [w]"), ("d0", "distance from [z] to [0]"),
                       ("dv", "distance from [z] to the vertex class")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--z", type=parse_point, default=0j)
        if name == "distance":
            p.add_argument("--w", type=parse_point, default=0j)
    sub.add_parser("diameter", parents=[common], help="max-min diameter search")
    sub.add_parser("systole", parents=[common], help="shortest closed geodesic")
    sub.add_parser("bounds", parents=[common], help="general diameter bounds")
    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--check", action="append", choices=CHECKS, default=None)
    p = sub.add_parser("tessellate", parents=[common], help="write an SVG of the tessellation")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--dual", action="store_true")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        genus=args.genus,
        ball_cutoff=args.cutoff,
        grid_n=args.grid,
        samples_n=args.samples,
        seed=args.seed,
        tolerances=dict(args.tol),
        out=args.out,
        format=args.format,
    )


def _ball(args, params, config: RunConfig, cutoff=None):
    cap = args.max_elements or DEFAULT_MAX_ELEMENTS
    return enumerate_ball(params, cutoff if cutoff is not None else config.cutoff(params), cap)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _document(config: RunConfig, params, reports, seconds, ell=None) -> ReportDocument:
    unknown = set(config.tolerances) - part_names(reports)
    if unknown:
        raise UsageError(f"unknown tolerance name(s): {', '.join(sorted(unknown))}")
    reports = [with_tolerances(r, config.tolerances) for r in reports]
    return ReportDocument.build(config, params, reports, seconds, ell)


def _finish(doc: ReportDocument, config: RunConfig) -> int:
    for row in doc.checks:
        flag = "PASS" if row.passed else "FAIL"
        print(f"{flag} {row.name} margin={row.margin:.3e} samples={row.samples} seconds={row.seconds:.2f}")
    if config.out:
        export_report(doc, config.out, config.format)
    return EXIT_OK if doc.passed else EXIT_FAIL


def run(args) -> int:
    config = _config(args)
    params = surface_params(config.genus)
    cmd = args.command
    if cmd == "params":
        print(f"genus {params.genus}")
        for name, value in (("R", params.R), ("s", params.s), ("R_prime", params.R_prime),
                            ("s_prime", params.s_prime), ("A", params.area)):
            print(f"{name} {value:.10f}")
        return EXIT_OK
    if cmd == "d0":
        print(f"{d0(params, args.z):.12f}")
        return EXIT_OK
    if cmd == "dv":
        print(f"{dv(params, args.z):.12f}")
        return EXIT_OK
    if cmd == "distance":
        print(f"{quotient_distance(params, args.z, args.w, _ball(args, params, config)):.12f}")
        return EXIT_OK
    if cmd == "systole":
        cutoff = args.cutoff if args.cutoff is not None else 2.0 * params.s
        print(f"{systole(params, _ball(args, params, config, cutoff)):.12f}")
        return EXIT_OK
    if cmd == "diameter":
        estimate, (z, w), rep = diameter_estimate(params, _ball(args, params, config), config.grid_n, seed=config.seed)
        print(f"diameter {estimate:.12f} at z={z:.6f} w={w:.6f}")
        return _finish(_document(config, params, [rep], [0.0]), config)
    if cmd == "bounds":
        ell = systole(params, _ball(args, params, config, 2.0 * params.s))
        rep = literature_bounds(params, ell, params.R)
        for part in rep.parts:
            print(f"{part.name} {part.margin:.6f}")
        return _finish(_document(config, params, [rep], [0.0], ell), config)
    if cmd == "verify":
        suite = run_suite(params, _ball(args, params, config), args.check, config.grid_n, config.samples_n, config.seed)
        return _finish(_document(config, params, suite.reports, suite.seconds, suite.systole), config)
    if cmd == "tessellate":
        _emit(render_tessellation_svg(params, None, args.depth, args.dual), args.out)
        return EXIT_OK
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bolza: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BolzaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
