"""
Command line interface
======================

Subcommands:

    solve     incircle radius closing an n-gon for given R_K, d
    generate  solve, trace, verify and write a scene JSON
    verify    re-check a scene file against a tolerance
    render    draw a scene file as SVG
    sweep     frames at equally spaced start angles plus a porism summary

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
failure. The verification tolerance comes from --tol, then BICENT_TOL, then
the built-in default.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence, Tuple

from bicentric import constants
from bicentric.constants import Tolerances
from bicentric.errors import (
    NUMERIC_FAILURES,
    BicentricError,
    DegenerateInput,
    NotNested,
    PoleAtDEqualsRK,
    SceneError,
)
from bicentric.poncelet import (
    EULER3,
    FUSS4,
    CirclePair,
    condition_residual,
    fold_angle,
    solve_closure_rc,
    trace_polygon,
)
from bicentric.render import RenderOptions, render_svg
from bicentric.scene_io import (
    VerificationReport,
    build_report,
    build_scene,
    load_scene,
    save_scene,
)
from bicentric.theorems import predicted_circle_E

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _fail(message: str) -> None:
    print(f"❌ {message}", file=sys.stderr)


def _condition(pair: CirclePair, kind: str) -> Optional[float]:
    try:
        return condition_residual(pair, kind)
    except PoleAtDEqualsRK:
        return None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_solve(args: argparse.Namespace) -> int:
    pair = solve_closure_rc(args.n, args.winding, args.rk, args.d)
    r_e = predicted_circle_E(pair).radius
    euler3, fuss4 = _condition(pair, EULER3), _condition(pair, FUSS4)

    if args.json:
        print(json.dumps({
            "n": args.n,
            "winding": args.winding,
            "r_k": args.rk,
            "d": args.d,
            "r_c": pair.r_c,
            "r_e": r_e,
            "euler3_residual": euler3,
            "fuss4_residual": fuss4,
        }, indent=2))
        return EXIT_OK

    print(f"✅ Closing incircle for n={args.n}, winding={args.winding}, R_K={args.rk}, d={args.d}")
    print(f"R_C = {pair.r_c:.15g}")
    print(f"R_E = {r_e:.15g}")
    for name, value in ((EULER3, euler3), (FUSS4, fuss4)):
        shown = "n/a" if value is None else f"{value:.3e}"
        print(f"{name} residual = {shown}")
    return EXIT_OK


def _print_report(report: VerificationReport, tol: float, as_json: bool) -> None:
    if as_json:
        print(json.dumps({
            "overall_pass": report.overall_pass,
            "tolerance": tol,
            "entries": [
                {"name": e.name, "value": e.value, "tolerance": e.tolerance, "pass": e.passed}
                for e in report.entries
            ],
        }, indent=2))
        return

    print(f"{'check':<28} {'residual':>12} {'tolerance':>10}")
    print("-" * 56)
    for e in report.entries:
        mark = "✅" if e.passed else "❌"
        print(f"{e.name:<28} {e.value:>12.3e} {e.tolerance:>10.1e}  {mark}")
    print("-" * 56)
    if report.overall_pass:
        print(f"✅ All {len(report.entries)} checks pass")
    else:
        names = ", ".join(e.name for e in report.failures())
        print(f"❌ {len(report.failures())} of {len(report.entries)} checks fail: {names}")


def cmd_generate(args: argparse.Namespace) -> int:
    tols = Tolerances.resolve(args.tol)
    pair = solve_closure_rc(args.n, args.winding, args.rk, args.d, closure_tol=tols.closure_tol)
    polygon, defect = trace_polygon(pair, args.start_angle, args.n, args.winding)
    logger.debug("generate: positional defect %.3e", defect.positional_defect)

    scene = build_scene(polygon, args.start_angle, tols.verify_tol)
    if not scene.reports.overall_pass:
        _print_report(scene.reports, tols.verify_tol, as_json=False)
        _fail(f"verification failed, {args.out} not written")
        return EXIT_VERIFY_FAILED

    path = save_scene(scene, Path(args.out))
    print(f"✅ Scene written: {path}")
    print(f"R_C = {pair.r_c:.15g}, {len(scene.reports.entries)} checks pass at tol {tols.verify_tol:g}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    tols = Tolerances.resolve(args.tol)
    scene = load_scene(Path(args.file))
    report = build_report(scene, tols.verify_tol)
    _print_report(report, tols.verify_tol, args.json)
    return EXIT_OK if report.overall_pass else EXIT_VERIFY_FAILED


def cmd_render(args: argparse.Namespace) -> int:
    scene = load_scene(Path(args.file))
    options = RenderOptions(width_px=args.width, show_excircles=args.show_excircles,
                            show_bisectors=args.show_bisectors)
    svg = render_svg(scene, options)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(svg)
    print(f"✅ SVG written: {out} ({len(svg)} bytes)")
    return EXIT_OK


def _sweep_frame(pair: CirclePair, n: int, winding: int, index: int, frames: int,
                 tol: float, out_dir: Path) -> Tuple[float, float, float]:
    """Write one frame; returns (folded angular defect, positional defect, excenter deviation)"""
    start_angle = constants.TWO_PI * index / frames
    polygon, defect = trace_polygon(pair, start_angle, n, winding)
    scene = build_scene(polygon, start_angle, tol)
    save_scene(scene, out_dir / f"frame_{index:04d}.json")

    expected_E = predicted_circle_E(pair)
    deviation = max(expected_E.residual(m) for m in scene.excenters.excenters) / pair.r_k
    return fold_angle(defect.angular_defect), defect.positional_defect, deviation


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.frames < 1:
        raise DegenerateInput(f"--frames must be at least 1, got {args.frames}")
    if args.workers < 1:
        raise DegenerateInput(f"--workers must be at least 1, got {args.workers}")
    tols = Tolerances.resolve(args.tol)
    pair = solve_closure_rc(args.n, args.winding, args.rk, args.d, closure_tol=tols.closure_tol)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    print(f"🚀 Sweeping {args.frames} frames (n={args.n}, winding={args.winding}, R_C={pair.r_c:.15g})")
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        results = list(pool.map(
            lambda k: _sweep_frame(pair, args.n, args.winding, k, args.frames,
                                   tols.verify_tol, out_dir),
            range(args.frames)))

    angular = [r[0] for r in results]
    spread = max(abs(fold_angle(a - angular[0])) for a in angular)
    max_closure = max(r[1] for r in results)
    max_deviation = max(r[2] for r in results)
    porism_pass = max_closure <= tols.closure_tol and spread <= tols.closure_tol
    rolling_pass = max_deviation <= tols.verify_tol

    summary = {
        "n": args.n,
        "winding": args.winding,
        "frames": args.frames,
        "r_c": pair.r_c,
        "closure_spread": spread,
        "max_closure_defect": max_closure,
        "max_excenter_deviation": max_deviation,
        "porism_pass": porism_pass,
        "rolling_pass": rolling_pass,
    }
    with open(out_dir / "summary.json", "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=2)
        f.write("\n")

    print(f"{'✅' if porism_pass else '❌'} porism: max closure defect {max_closure:.3e}, "
          f"spread {spread:.3e} rad")
    print(f"{'✅' if rolling_pass else '❌'} rolling excenters: max deviation from E {max_deviation:.3e}")
    print(f"📁 Output directory: {out_dir}")
    return EXIT_OK if porism_pass and rolling_pass else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def _add_pair_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="number of vertices")
    parser.add_argument("--winding", type=int, default=1, help="winding number about M_C (default: 1)")
    parser.add_argument("--rk", type=float, default=1.0, help="circumcircle radius R_K (default: 1)")
    parser.add_argument("--d", type=float, required=True, help="center distance d")


def _add_tol_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None,
                        help=f"verification tolerance (default: ${constants.ENV_TOL} or "
                             f"{constants.DEFAULT_VERIFY_TOL:g})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicentric",
        description="Bicentric polygons and the concyclic centers of their excircles",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  bicentric solve --n 3 --rk 1 --d 0.2
  bicentric generate --n 5 --d 0.2 --start-angle 0.7 --out pentagon.json
  bicentric verify pentagon.json --tol 1e-10
  bicentric render pentagon.json --out pentagon.svg --show-excircles
  bicentric sweep --n 4 --d 0.2 --frames 100 --out frames/
        """,
    )
    parser.add_argument("--verbose", action="store_true", help="enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve for the closing incircle radius")
    _add_pair_arguments(solve)
    solve.add_argument("--json", action="store_true", help="print JSON instead of text")
    solve.set_defaults(handler=cmd_solve)

    generate = sub.add_parser("generate", help="write a verified scene JSON")
    _add_pair_arguments(generate)
    generate.add_argument("--start-angle", type=float, default=0.0,
                          help="angle of A_1 about M_K in radians (default: 0)")
    generate.add_argument("--out", required=True, help="output scene file")
    _add_tol_argument(generate)
    generate.set_defaults(handler=cmd_generate)

    verify = sub.add_parser("verify", help="verify a scene file")
    verify.add_argument("file", help="scene JSON")
    _add_tol_argument(verify)
    verify.add_argument("--json", action="store_true", help="print the report as JSON")
    verify.set_defaults(handler=cmd_verify)

    render = sub.add_parser("render", help="render a scene file as SVG")
    render.add_argument("file", help="scene JSON")
    render.add_argument("--out", required=True, help="output SVG file")
    render.add_argument("--width", type=int, default=constants.DEFAULT_WIDTH_PX,
                        help=f"image width in pixels (default: {constants.DEFAULT_WIDTH_PX})")
    render.add_argument("--show-excircles", action="store_true", help="draw the excircles")
    render.add_argument("--show-bisectors", action="store_true", help="draw the external bisectors")
    render.set_defaults(handler=cmd_render)

    sweep = sub.add_parser("sweep", help="frames over equally spaced start angles")
    _add_pair_arguments(sweep)
    sweep.add_argument("--frames", type=int, default=100, help="number of frames (default: 100)")
    sweep.add_argument("--out", required=True, help="output directory")
    sweep.add_argument("--workers", type=int, default=4, help="worker threads (default: 4)")
    _add_tol_argument(sweep)
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 after --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        return args.handler(args)
    except (SceneError, NotNested, DegenerateInput, ValueError) as e:
        _fail(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except OSError as e:
        _fail(f"cannot access file: {e}")
        return EXIT_USAGE
    except NUMERIC_FAILURES as e:
        _fail(f"numeric failure, {type(e).__name__}: {e}")
        return EXIT_NUMERIC
    except BicentricError as e:
        _fail(f"{type(e).__name__}: {e}")
        if args.verbose:
            import traceback
            traceback.print_exc()
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
