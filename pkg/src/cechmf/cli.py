"""Command-line driver: verify / pushforward / homology."""

from __future__ import annotations

import argparse
import json
import sys

from . import signs
from .cech import FORM, OMEGA, OMEGA_Y, CONE, Cochain
from .diagrams import pushforward_unit
from .forms import Form
from .homology import homology_dims, is_boundary_within_window
from .parsing import parse_poly
from .report import Report, Timer
from .scene import Scene, load_scene, validate_scene
from .scenes_builtin import all_builtin_names, builtin_scene
from .ses import NotACocycle
from .suites import SUITES, suite_pushforward
from .cech import cech_total_d


def _resolve_scene(spec: str, trunc: int | None, window: int | None) -> Scene:
    if spec in all_builtin_names():
        scene = builtin_scene(spec)
    else:
        scene = load_scene(spec)
    if trunc is not None:
        scene.trunc = trunc
    if window is not None:
        scene.window = window
    return scene


def _emit(report: Report, args) -> int:
    if args.format == "json":
        text = report.to_json(include_timings=args.timings)
    else:
        text = report.to_text()
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if report.ok else 1


def cmd_verify(args) -> int:
    scene = _resolve_scene(args.scene, args.trunc, args.window)
    rep = Report(
        scene=scene.name,
        seed=args.seed,
        trunc=scene.trunc,
        window=scene.window,
        todd_sign=-1 if args.todd_sign == "minus" else 1,
        ledger_version=signs.LEDGER_VERSION,
    )
    val = validate_scene(scene)
    if not val.ok and args.suite != "scene":
        rep.add_suite("scene", [
            __import__("cechmf.report", fromlist=["Check"]).Check(
                f"scene:{n}", False, d
            )
            for n, d in val.failures()
        ], 0.0)
        return _emit(rep, args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            print(f"unknown suite {name!r}; available: {', '.join(SUITES)}", file=sys.stderr)
            return 2
        fn = SUITES[name]
        with Timer() as t:
            if name == "diagram1":
                todd = None if args.todd_sign == "auto" else (
                    -1 if args.todd_sign == "minus" else 1
                )
                checks = fn(scene, seed=args.seed, todd_sign=todd)
            else:
                checks = fn(scene, seed=args.seed)
        rep.add_suite(name, checks, t.seconds)
    return _emit(rep, args)


def _load_y_class(path: str, scene: Scene) -> Cochain:
    with open(path) as fh:
        data = json.load(fh)
    entries = {}
    for key, terms in data.items():
        I = tuple(int(x) for x in key.split(","))
        ring = scene.atlas.ring(I)
        form_terms = {}
        for dxkey, poly in terms.items():
            K = tuple(int(x) for x in dxkey.split(",")) if dxkey else ()
            form_terms[K] = parse_poly(poly, ring)
        entries[I] = Form(ring, form_terms)
    return Cochain(scene, "yform", entries)


def cmd_pushforward(args) -> int:
    scene = _resolve_scene(args.scene, args.trunc, args.window)
    rep = Report(
        scene=scene.name,
        seed=args.seed,
        trunc=scene.trunc,
        window=scene.window,
        todd_sign=signs.sign("todd-factor"),
        ledger_version=signs.LEDGER_VERSION,
    )
    with Timer() as t:
        if args.input == "unit":
            checks = suite_pushforward(scene, seed=args.seed)
        else:
            from .diagrams import pushforward_routes
            from .report import Check

            y_class = _load_y_class(args.input, scene)
            try:
                route_a = pushforward_routes(scene, y_class)
            except NotACocycle as e:
                print(f"input class is not a cocycle: {e}", file=sys.stderr)
                return 2
            closed = cech_total_d(route_a, OMEGA).is_zero()
            checks = [
                Check(
                    "pushforward:image",
                    closed,
                    "connecting morphism after inverse Todd multiplication",
                    {"value": repr(route_a)},
                )
            ]
    rep.add_suite("pushforward", checks, t.seconds)
    return _emit(rep, args)


def cmd_homology(args) -> int:
    scene = _resolve_scene(args.scene, args.trunc, args.window)
    rep = Report(
        scene=scene.name,
        seed=args.seed,
        trunc=scene.trunc,
        window=scene.window,
        ledger_version=signs.LEDGER_VERSION,
    )
    from .report import Check

    # instability is reported, not fatal: affine divisors have homology of
    # unbounded dimension over the rationals and the window slices grow
    kinds = {"omega": OMEGA, "omega_y": OMEGA_Y, "cone": CONE}
    with Timer() as t:
        checks = []
        for label, kind in kinds.items():
            dims = homology_dims(scene, kind, scene.window)
            checks.append(
                Check(
                    f"homology:{label}",
                    True,
                    f"even {dims['even']}, odd {dims['odd']}, "
                    f"stable {dims['stable']} (window {dims['window']})",
                    {"dims": dims},
                )
            )
    rep.add_suite("homology", checks, t.seconds)
    return _emit(rep, args)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="cechmf",
        description="Exact chain-level verification engine for matrix factorization scenes",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--scene", required=True, help="built-in name or scene file path")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trunc", type=int, default=None, help="Hochschild length cap N")
        p.add_argument("--window", type=int, default=None, help="homology window D")
        p.add_argument("--report", default=None, help="write the report to this path")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument(
            "--timings",
            action="store_true",
            help="include wall-clock timings in JSON (breaks byte determinism)",
        )

    p = sub.add_parser("verify", help="run property suites")
    common(p)
    p.add_argument("--suite", default="all", help="suite name or 'all'")
    p.add_argument(
        "--todd-sign",
        choices=("auto", "plus", "minus"),
        default="auto",
        help="sign switch for the trace-vs-residue square",
    )
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("pushforward", help="run the main-theorem instance")
    common(p)
    p.add_argument("--input", default="unit", help="'unit' or a JSON divisor-class file")
    p.set_defaults(fn=cmd_pushforward)

    p = sub.add_parser("homology", help="windowed homology tables")
    common(p)
    p.set_defaults(fn=cmd_homology)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
