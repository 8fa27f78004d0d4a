"""Command-line interface.

Subcommands:

* ``classify`` — run the full recognition pipeline on a map germ.
* ``suite tangent-dev`` — tangent developable of a space curve: torsion
  data, classification, and the psi = -torsion cross-check.
* ``suite fold`` — compose a germ with a fold map: predicted class from
  contact data versus direct classification of the composition.
* ``suite curve25`` — the (2,5)-cusp test for a space curve.
* ``mesh`` — sample a map on a grid and write a Wavefront OBJ file.

Exit codes: 0 definite classification (including regular), 1 error,
2 unrecognized.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import apps, frontal, mesh
from .errors import SingrecError
from .expr import parse_components, parse_curve, parse_map, parse_scalar
from .frontal import DEFAULT_MAX_K, FrontalGerm
from .jets import DEFAULT_ORDER, Tolerance, vanishing_order
from .errors import OrderExceedsTruncation, PreconditionFailed
from .report import Report, run_classification


def _tolerance(args) -> Tolerance:
    return Tolerance(abs=args.tol_abs, rel=args.tol_rel)


def _normal_spec(text: str, variables=("u", "v")):
    if text == "auto":
        return "auto"
    return parse_components(text, variables)


def _pair(text: str, sep: str, kind=float) -> tuple:
    parts = text.split(sep)
    if len(parts) != 2:
        raise ValueError(f"expected two values separated by {sep!r}: {text!r}")
    return tuple(kind(p) for p in parts)


def _emit(report: Report, as_json: bool) -> int:
    print(report.to_json() if as_json else report.to_text())
    return report.exit_code


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--order", type=int, default=DEFAULT_ORDER,
                   help="jet truncation order (default %(default)s)")
    p.add_argument("--max-k", type=int, default=DEFAULT_MAX_K, dest="max_k",
                   help="largest vanishing order searched (default %(default)s)")
    p.add_argument("--tol-abs", type=float, default=1e-9, dest="tol_abs")
    p.add_argument("--tol-rel", type=float, default=1e-9, dest="tol_rel")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def cmd_classify(args) -> int:
    germ_map = parse_map(args.map, base_point=_pair(args.point, ","))
    report = run_classification(
        germ_map,
        normal=_normal_spec(args.normal),
        order=args.order,
        tol=_tolerance(args),
        max_k=args.max_k,
    )
    return _emit(report, args.json)


def cmd_suite_tangent_dev(args) -> int:
    start = time.perf_counter()
    tol = _tolerance(args)
    curve = parse_curve(args.curve)
    g = apps.tangent_developable(curve, args.order, tol)
    analysis = frontal.analyze_frontal(g, args.order, tol, args.max_k)
    arc = apps.arclength_jets(curve.jets(args.order), tol)
    tau = apps.frenet_jets(arc, tol).tau
    try:
        torsion_order, _ = vanishing_order(tau, tol)
    except OrderExceedsTruncation:
        torsion_order = None
    extra = {"torsion_order": torsion_order}
    if analysis.psi is not None:
        n = min(analysis.psi.psi.order, tau.order, 6)
        gap = float(np.max(np.abs(analysis.psi.psi.coeffs[: n + 1] + tau.coeffs[: n + 1])))
        scale = float(np.max(np.abs(tau.coeffs[: n + 1])))
        extra["psi_matches_neg_torsion"] = bool(gap <= 1e-9 * max(scale, 1.0))
    report = Report(
        command="tangent-dev",
        input={"curve": str(curve)},
        classification=analysis.classification,
        diagnostics=dict(analysis.classification.diagnostics),
        tolerances={"abs": tol.abs, "rel": tol.rel, "order": args.order},
        timing_ms=(time.perf_counter() - start) * 1e3,
        extra=extra,
    )
    return _emit(report, args.json)


def cmd_suite_fold(args) -> int:
    start = time.perf_counter()
    tol = _tolerance(args)
    germ_map = parse_map(args.map, base_point=_pair(args.point, ","))
    g = FrontalGerm(germ_map, _normal_spec(args.normal))
    spec = apps.fold_spec(
        parse_components(args.fold, apps.FOLD_VARS),
        parse_scalar(args.surface, apps.FOLD_VARS),
        order=args.order,
        tol=tol,
    )
    composed, checks = apps.fold_compose(g, spec, args.order, tol)
    direct = frontal.classify_frontal(FrontalGerm(composed), args.order, tol, args.max_k)
    try:
        predicted = apps.predict_fold_class(g, spec, args.order, tol)
        predicted_label, gate_failure = predicted.label, None
    except PreconditionFailed as exc:
        predicted_label, gate_failure = None, str(exc)
    extra = {
        "predicted": predicted_label,
        "direct": direct.label,
        "agree": predicted_label == direct.label if predicted_label else None,
        "checks": {"A": checks["A"], "B": checks["B"]},
    }
    if gate_failure:
        extra["gate_failure"] = gate_failure
    report = Report(
        command="fold",
        input={"map": str(germ_map), "fold": args.fold, "surface": args.surface},
        classification=direct,
        diagnostics=dict(direct.diagnostics),
        tolerances={"abs": tol.abs, "rel": tol.rel, "order": args.order},
        timing_ms=(time.perf_counter() - start) * 1e3,
        extra=extra,
    )
    return _emit(report, args.json)


def cmd_suite_curve25(args) -> int:
    start = time.perf_counter()
    tol = _tolerance(args)
    curve = parse_curve(args.curve)
    cls = frontal.classify_curve_cusp25(curve, tol, args.order)
    report = Report(
        command="curve25",
        input={"curve": str(curve)},
        classification=cls,
        diagnostics=dict(cls.diagnostics),
        tolerances={"abs": tol.abs, "rel": tol.rel, "order": args.order},
        timing_ms=(time.perf_counter() - start) * 1e3,
    )
    return _emit(report, args.json)


def cmd_mesh(args) -> int:
    germ_map = parse_map(args.map, base_point=_pair(args.point, ","))
    spec = mesh.MeshSpec(
        u_range=_pair(args.u_range, ":"),
        v_range=_pair(args.v_range, ":"),
        resolution=_pair(args.res, "x", int),
    )
    lines = mesh.write_obj(germ_map, spec, args.out)
    print(f"wrote {args.out}: {lines} lines "
          f"({spec.resolution[0] * spec.resolution[1]} vertices)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singrec",
        description="Classify singular points of maps from the plane to 3-space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a map germ at a point")
    p.add_argument("--map", required=True, help='e.g. "(u, v^2, v^3)"')
    p.add_argument("--normal", default="auto",
                   help='normal field: "auto" or three components (default auto)')
    p.add_argument("--point", default="0,0", help="base point u,v (default origin)")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    suite = sub.add_parser("suite", help="built-in demonstration pipelines")
    ssub = suite.add_subparsers(dest="suite_command", required=True)

    p = ssub.add_parser("tangent-dev", help="tangent developable of a space curve")
    p.add_argument("--curve", required=True, help='e.g. "(t, t^2/2, t^5)"')
    _add_common(p)
    p.set_defaults(func=cmd_suite_tangent_dev)

    p = ssub.add_parser("fold", help="fold composition: prediction vs direct")
    p.add_argument("--map", required=True)
    p.add_argument("--fold", default="(x, y, z^2)")
    p.add_argument("--surface", default="z", help="implicit equation of S(F)")
    p.add_argument("--normal", default="auto")
    p.add_argument("--point", default="0,0")
    _add_common(p)
    p.set_defaults(func=cmd_suite_fold)

    p = ssub.add_parser("curve25", help="(2,5)-cusp test for a space curve")
    p.add_argument("--curve", required=True, help='e.g. "(t^2, t^5, 0)"')
    _add_common(p)
    p.set_defaults(func=cmd_suite_curve25)

    p = sub.add_parser("mesh", help="sample a map and write a Wavefront OBJ")
    p.add_argument("--map", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--u-range", default="-1:1", dest="u_range")
    p.add_argument("--v-range", default="-1:1", dest="v_range")
    p.add_argument("--res", default="64x64", help="vertices per axis, e.g. 64x64")
    p.add_argument("--point", default="0,0")
    p.set_defaults(func=cmd_mesh)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (SingrecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
