"""Applications of the recognition pipeline: tangent developables and folds.

The tangent developable of a space curve is the surface swept by its
tangent lines.  Its singular behaviour along the curve is governed by the
torsion: vanishing order 0, 1, 2 of tau gives a cuspidal edge, a cuspidal
cross cap, and a cuspidal S1+ respectively.  The surface is assembled at
jet level in arclength parameter, where the pipeline's psi-series equals
the negated torsion on the nose.

Composing a cuspidal edge with a fold map multiplies the hierarchy: if the
image of the singular curve has k-point contact with the fold's critical
plane (and two genericity gates hold), the composition is a cuspidal
S_{k-1}; for even k the sign is read off a half-space comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classification import Classification, cuspidal_sk
from .errors import (
    CurvatureVanishes,
    NotRegular,
    OrderExceedsTruncation,
    PreconditionFailed,
    SingrecError,
)
from .expr import CurveGerm, Expr, MapGerm, differentiate, evaluate, substitute
from .frontal import (
    DEFAULT_MAX_K,
    FrontalAnalysis,
    FrontalGerm,
    JetMap,
    analyze_frontal,
    resolve_normal,
)
from .jets import (
    DEFAULT_ORDER,
    DEFAULT_TOL,
    Jet1,
    Jet2,
    JetPath,
    Tolerance,
    align,
    compose,
    compose1,
    cross3,
    det3,
    dot3,
    sqrt,
    vanishing_order,
)


@dataclass(frozen=True)
class FrenetData:
    e: tuple[Jet1, Jet1, Jet1]  # unit tangent
    n: tuple[Jet1, Jet1, Jet1]  # principal normal
    b: tuple[Jet1, Jet1, Jet1]  # binormal
    kappa: Jet1
    tau: Jet1


def frenet_jets(cjets: tuple[Jet1, ...], tol: Tolerance = DEFAULT_TOL) -> FrenetData:
    d1 = tuple(c.diff() for c in cjets)
    d2 = tuple(c.diff() for c in d1)
    d3 = tuple(c.diff() for c in d2)
    speed2 = dot3(d1, d1)
    scale = max(c.max_abs() for c in d1) ** 2
    if tol.is_zero(speed2.value(), scale):
        raise NotRegular("curve velocity vanishes at the base point")
    speed = sqrt(speed2)
    e = tuple(a / b for a, b in (align(c, speed) for c in d1))
    cr = cross3(d1, d2)
    cr2 = dot3(cr, cr)
    if tol.is_zero(cr2.value(), max(c.max_abs() for c in cr) ** 2 + scale**2):
        raise CurvatureVanishes("curvature vanishes at the base point")
    crn = sqrt(cr2)
    kappa_n, kappa_d = align(crn, speed**3)
    kappa = kappa_n / kappa_d
    tau_n, tau_d = align(det3((d1, d2, d3)), cr2)
    tau = tau_n / tau_d
    b = tuple(x / y for x, y in (align(c, crn) for c in cr))
    n = cross3(b, e)
    return FrenetData(e, n, b, kappa, tau)


def frenet(sigma: CurveGerm, order: int = DEFAULT_ORDER, tol: Tolerance = DEFAULT_TOL) -> FrenetData:
    return frenet_jets(sigma.jets(order), tol)


# ---------------------------------------------------------------------------
# arclength reparametrization and the tangent developable
# ---------------------------------------------------------------------------


def _invert_series(s: Jet1) -> Jet1:
    """Compositional inverse of a series with s(0) = 0, s'(0) != 0."""
    slope = float(s.coeffs[1])
    if slope == 0.0:
        raise NotRegular("cannot invert a series with vanishing linear term")
    w = np.zeros(s.order + 1)
    w[1] = 1.0 / slope
    for m in range(2, s.order + 1):
        residual = compose1(s, Jet1(w))
        w[m] -= float(residual.coeffs[m]) / slope
    return Jet1(w)


def arclength_jets(cjets: tuple[Jet1, ...], tol: Tolerance = DEFAULT_TOL) -> tuple[Jet1, ...]:
    """Reparametrize position jets by arclength (unit speed at every order)."""
    d1 = tuple(c.diff() for c in cjets)
    speed2 = dot3(d1, d1)
    if tol.is_zero(speed2.value(), max(c.max_abs() for c in d1) ** 2):
        raise NotRegular("curve velocity vanishes at the base point")
    s = sqrt(speed2).integrate(0.0)
    t_of_s = _invert_series(s)
    return tuple(compose1(c.truncated(t_of_s.order), t_of_s) for c in cjets)


def _promote(j: Jet1, order: int) -> Jet2:
    coeffs = np.zeros((order + 1, order + 1))
    n = min(j.order, order)
    coeffs[: n + 1, 0] = j.coeffs[: n + 1]
    return Jet2(coeffs, order)


def tangent_developable(
    sigma: CurveGerm, order: int = DEFAULT_ORDER, tol: Tolerance = DEFAULT_TOL
) -> FrontalGerm:
    """Surface (t, u) -> sigma(t) + u e(t) as a jet-backed frontal germ.

    Built in arclength parameter; the binormal serves as the explicit
    normal field.  Requires non-vanishing curvature at the base point.
    """
    arc = arclength_jets(sigma.jets(order), tol)
    frame = frenet_jets(arc, tol)
    n = min(j.order for j in frame.e)
    u_var = Jet2.variable(1, 0.0, n)
    comps = tuple(
        _promote(pos.truncated(n), n) + u_var * _promote(e.truncated(n), n)
        for pos, e in zip(arc, frame.e)
    )
    nb = min(j.order for j in frame.b)
    nu = tuple(_promote(b, nb) for b in frame.b)
    return FrontalGerm(JetMap(comps), nu)


# ---------------------------------------------------------------------------
# fold maps
# ---------------------------------------------------------------------------

FOLD_VARS = ("x", "y", "z")


@dataclass(frozen=True)
class FoldSpec:
    """A fold-equivalent germ of 3-space with its critical surface {h = 0}."""

    components: tuple[Expr, Expr, Expr]
    surface: Expr
    kernel_dir: np.ndarray


def _grad_at0(e: Expr) -> np.ndarray:
    env = {v: 0.0 for v in FOLD_VARS}
    return np.array(
        [float(evaluate(differentiate(e, v), env)) for v in FOLD_VARS]
    )


def _curve_in_surface(h: Expr, seeds: np.ndarray, order: int, tol: Tolerance) -> tuple[Jet1, ...]:
    """A curve t -> p(t) inside {h = 0} with prescribed free components."""
    grad = _grad_at0(h)
    axis = int(np.argmax(np.abs(grad)))
    if tol.is_zero(grad[axis], 1.0):
        raise PreconditionFailed("critical surface is not regular at the base point")
    comps = [None, None, None]
    free = [i for i in range(3) if i != axis]
    for i, seed in zip(free, seeds):
        c = np.zeros(order + 1)
        c[1 : len(seed) + 1] = seed
        comps[i] = Jet1(c)
    w = np.zeros(order + 1)
    for m in range(1, order + 1):
        comps[axis] = Jet1(w)
        residual = evaluate(h, dict(zip(FOLD_VARS, comps)))
        w[m] -= float(residual.coeffs[m]) / grad[axis]
    comps[axis] = Jet1(w)
    return tuple(comps)


def fold_spec(
    components: tuple[Expr, Expr, Expr],
    surface: Expr,
    kernel_dir=None,
    order: int = DEFAULT_ORDER,
    tol: Tolerance = DEFAULT_TOL,
    verify: bool = True,
    trials: int = 4,
    seed: int = 7,
) -> FoldSpec:
    """Assemble a fold specification, deriving the kernel from dF(0) if absent.

    When ``verify`` is set, the determinant of dF is checked to vanish along
    sampled jet curves inside {h = 0}.
    """
    env0 = {v: 0.0 for v in FOLD_VARS}
    jac = np.array(
        [
            [float(evaluate(differentiate(c, v), env0)) for v in FOLD_VARS]
            for c in components
        ]
    )
    if kernel_dir is None:
        _, s, vt = np.linalg.svd(jac)
        if s[2] > tol.threshold(s[0]):
            raise PreconditionFailed("dF(0) is invertible; not a fold")
        kernel_dir = vt[2]
    kernel_dir = np.asarray(kernel_dir, dtype=float)
    if verify:
        rng = np.random.default_rng(seed)
        dF = [[differentiate(c, v) for v in FOLD_VARS] for c in components]
        for _ in range(trials):
            path = _curve_in_surface(h=surface, seeds=rng.uniform(-0.5, 0.5, (2, 3)),
                                     order=order, tol=tol)
            env = dict(zip(FOLD_VARS, path))
            rows = [[evaluate(d, env) for d in row] for row in dF]
            cols = tuple(tuple(rows[i][j] for i in range(3)) for j in range(3))
            det = det3(cols)
            scale = max(max(e.max_abs() for e in row) for row in rows) ** 3
            if det.max_abs() > tol.threshold(scale):
                raise PreconditionFailed(
                    "det dF does not vanish on the declared critical surface"
                )
    return FoldSpec(tuple(components), surface, kernel_dir)


def contact_order(
    path: tuple[Jet1, Jet1, Jet1],
    surface: Expr,
    tol: Tolerance = DEFAULT_TOL,
) -> int:
    k, _ = _contact_data(path, surface, tol)
    return k


def _contact_data(path, surface: Expr, tol: Tolerance) -> tuple[int, float]:
    along = evaluate(surface, dict(zip(FOLD_VARS, path)))
    if not tol.is_zero(along.value(), along.max_abs()):
        raise PreconditionFailed("path does not start on the surface")
    return vanishing_order(along, tol)


def fold_compose(
    g: FrontalGerm,
    fold: FoldSpec,
    order: int = DEFAULT_ORDER,
    tol: Tolerance = DEFAULT_TOL,
):
    """Compose the germ with the fold and evaluate the two genericity gates.

    Gate A: the kernel of dF(0) is not inside the limiting tangent plane,
    i.e. <nu(0), ker dF(0)> != 0.  Gate B: the limiting tangent plane is
    transverse to (differs from) the tangent plane of the critical surface,
    i.e. nu(0) is not parallel to grad h(0).
    """
    nu = resolve_normal(g, order, tol)
    nu0 = np.array([c.value() for c in nu])
    grad_h = _grad_at0(fold.surface)
    a_val = float(np.dot(nu0, fold.kernel_dir))
    check_a = bool(
        abs(a_val)
        > tol.threshold(np.linalg.norm(nu0) * np.linalg.norm(fold.kernel_dir))
    )
    b_vec = np.cross(nu0, grad_h)
    check_b = bool(
        np.linalg.norm(b_vec)
        > tol.threshold(np.linalg.norm(nu0) * np.linalg.norm(grad_h))
    )
    if isinstance(g.map, MapGerm):
        mapping = dict(zip(FOLD_VARS, g.map.components))
        composed = MapGerm(
            tuple(substitute(c, mapping) for c in fold.components),
            g.map.base_point,
            g.map.variables,
        )
    else:
        env = dict(zip(FOLD_VARS, g.map.jets(order)))
        composed = JetMap(tuple(evaluate(c, env) for c in fold.components))
    checks = {
        "A": check_a,
        "B": check_b,
        "nu0": nu0.tolist(),
        "grad_h0": grad_h.tolist(),
    }
    return composed, checks


def predict_fold_class(
    g: FrontalGerm,
    fold: FoldSpec,
    order: int = DEFAULT_ORDER,
    tol: Tolerance = DEFAULT_TOL,
    analysis: FrontalAnalysis | None = None,
) -> Classification:
    """Predict the class of the composition from contact order and side data.

    Requires the germ to be a cuspidal edge and gates A and B to hold; the
    contact order k of the singular image curve with the critical surface
    gives cuspidal S_{k-1}, with the sign for even k decided by whether the
    image of the germ stays on the same side of the surface as the curve.
    """
    if analysis is None:
        analysis = analyze_frontal(g, order, tol)
    if analysis.classification.label != "cuspidal_edge":
        raise PreconditionFailed(
            f"input is {analysis.classification.label}, not a cuspidal edge"
        )
    _, checks = fold_compose(g, fold, order, tol)
    for gate in ("A", "B"):
        if not checks[gate]:
            raise PreconditionFailed(f"genericity gate {gate} fails")
    try:
        k, lead_curve = _contact_data(analysis.sing.gamma_hat, fold.surface, tol)
    except OrderExceedsTruncation as exc:
        raise PreconditionFailed(f"gate C: {exc}") from exc
    diag = {"contact_order": k, "checks": checks}
    if k % 2 == 1:
        return cuspidal_sk(k - 1, None, **diag)
    eta0 = np.array([c.value() for c in analysis.sing.eta])
    n = min(c.order for c in g.map.jets(order))
    probe = JetPath(
        Jet1.variable(0.0, n).scaled(eta0[0]).nilpotent(),
        Jet1.variable(0.0, n).scaled(eta0[1]).nilpotent(),
    )
    image = tuple(compose(c, probe) for c in g.map.jets(order))
    k2, lead_probe = _contact_data(image, fold.surface, tol)
    if k2 % 2 == 1:
        raise PreconditionFailed("image side probe has odd contact; side undefined")
    diag["probe_order"] = k2
    sign = 1 if lead_curve * lead_probe > 0 else -1
    return cuspidal_sk(k - 1, sign, **diag)
