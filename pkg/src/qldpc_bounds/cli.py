"""``qldpc-bounds``: analyze codes, generate inputs, profile graphs.

Exit codes: 0 success, 2 unreadable or invalid input, 3 an exact analysis
ran out of budget, 4 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .codes import FAMILIES, format_code, make_family, parse_code
from .errors import BudgetExceeded, InputError, InvariantViolation, SeparationFailed
from .generators import format_coords, make_grid, make_hyperbolic_patch, make_random_regular, parse_coords
from .graph import format_graph, graph_from_json, parse_graph
from .profile import separability_profile
from .report import AnalysisConfig, analyze_code, report_to_json, report_to_text
from .separators import STRATEGIES

EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 2, 3, 4
GRAPH_FAMILIES = ("grid", "hyperbolic", "random_regular")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args) -> int:
    code = parse_code(_read(args.code), name=Path(args.code).stem)
    cfg = AnalysisConfig(
        alpha=args.alpha,
        exact_tw_max=args.exact_tw_max,
        exact_sep_max=args.exact_sep_max,
        distance_cap=args.distance_cap,
        exact_budget=args.exact_budget,
        strategy=args.strategy,
        seed=args.seed,
        output_format=args.format,
        exponent=args.exponent,
        alpha_dist=args.alpha_dist,
        genus=args.genus,
        hyperbolic_dim=args.hyperbolic_dim,
    )
    report = analyze_code(code, cfg)
    _emit(report_to_text(report) if args.format == "text" else report_to_json(report), args.out)
    return 0


def _cmd_generate(args) -> int:
    fam, params = args.family, args.params
    if fam in FAMILIES:
        if len(params) > 1:
            raise InputError(f"{fam} takes at most one size parameter")
        size = int(params[0]) if params else None
        _emit(format_code(make_family(fam, size)), args.out)
        return 0
    if fam not in GRAPH_FAMILIES:
        raise InputError(f"unknown family {fam!r}; choose from {sorted(FAMILIES) + list(GRAPH_FAMILIES)}")
    try:
        nums = [int(p) for p in params]
    except ValueError:
        raise InputError(f"non-integer parameter in {params}") from None
    if fam == "random_regular":
        if len(nums) != 2:
            raise InputError("random_regular needs DEGREE N")
        _emit(format_graph(make_random_regular(nums[0], nums[1], args.seed)), args.out)
        return 0
    if fam == "grid":
        if len(nums) != 2:
            raise InputError("grid needs D SIDE")
        eg = make_grid(*nums)
    else:
        if len(nums) != 2:
            raise InputError("hyperbolic needs P Q (and --rings)")
        eg = make_hyperbolic_patch(nums[0], nums[1], args.rings)
    _emit(format_graph(eg.graph), args.out)
    coords_out = args.coords_out or (f"{args.out}.coords" if args.out else None)
    if coords_out:
        Path(coords_out).write_text(format_coords(eg))
    return 0


def _cmd_profile(args) -> int:
    text = _read(args.graph)
    g = graph_from_json(text) if text.lstrip().startswith("{") else parse_graph(text)
    if args.coords:
        parse_coords(_read(args.coords), g)
    r_grid = [int(r) for r in args.r_grid.split(",")] if args.r_grid else None
    prof = separability_profile(g, args.alpha, r_grid, args.samples, args.seed, args.strategy)
    _emit(prof.to_json() if args.format == "json" else prof.to_csv(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qldpc-bounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, default=0.5, help="separator balance in [0.5, 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="output file (default stdout)")

    an = sub.add_parser("analyze", parents=[common], help="bounds report for a qecc v1 file")
    an.add_argument("code")
    an.add_argument("--exact-tw-max", type=int, default=20)
    an.add_argument("--exact-sep-max", type=int, default=16)
    an.add_argument("--distance-cap", type=int, default=8)
    an.add_argument("--exact-budget", type=int, default=2_000_000, help="node/candidate budget for exact searches")
    an.add_argument("--strategy", choices=STRATEGIES[:2], default="bfs_layering")
    an.add_argument("--format", choices=("json", "text"), default="json")
    an.add_argument("--exponent", type=float, help="separator exponent c for the level formula")
    an.add_argument("--alpha-dist", type=float, help="distance exponent for the level formula")
    an.add_argument("--genus", type=int)
    an.add_argument("--hyperbolic-dim", type=int)
    an.set_defaults(func=_cmd_analyze)

    gen = sub.add_parser("generate", parents=[common], help="write a code or graph file")
    gen.add_argument("family")
    gen.add_argument("params", nargs="*")
    gen.add_argument("--rings", type=int, default=3)
    gen.add_argument("--coords-out", help="coords v1 sidecar path (default <out>.coords)")
    gen.set_defaults(func=_cmd_generate)

    pr = sub.add_parser("profile", parents=[common], help="sampled separability profile of a graph")
    pr.add_argument("graph")
    pr.add_argument("--coords", help="coords v1 sidecar to validate against the graph")
    pr.add_argument("--r-grid", help="comma-separated subgraph sizes")
    pr.add_argument("--samples", type=int, default=4)
    pr.add_argument("--strategy", choices=STRATEGIES[:2], default="bfs_layering")
    pr.add_argument("--format", choices=("csv", "json"), default="json")
    pr.set_defaults(func=_cmd_profile)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SeparationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET if isinstance(exc.__cause__, BudgetExceeded) else EXIT_INPUT
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
