"""Recognition pipeline for frontal surface germs.

A frontal comes with a normal field nu orthogonal to all image tangents.
The pipeline proceeds through the classical chain of invariants:

  * signed area density lambda = det(f_u, f_v, nu); its zeros are the
    singular set, non-degenerate when d lambda != 0 there,
  * the singular curve gamma solved from lambda(gamma(t)) = 0 order by
    order (jet-level implicit function theorem),
  * the null field eta(t) spanning ker df along gamma, with the null
    direction required transverse to the singular curve,
  * the scalar series psi(t) = det((f.gamma)', nu.gamma, d nu(eta)); its
    vanishing order k sorts the hierarchy: k = 0 cuspidal edge, k = 1
    cuspidal cross cap, k >= 2 cuspidal S_{k-1},
  * for k >= 2 a test curve c tangent to the null direction whose image
    measures the fifth-order cusp data (the value ``a``); for even k the
    sign of a * psi^(k)(0) distinguishes the +/- forms.

Every quantity is a jet computed exactly at the working truncation; all
decisions go through the scale-aware zero tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classification import Classification, Kind, cuspidal_sk, regular, unrecognized
from .errors import (
    CurveDegenerate,
    DegenerateSingularity,
    NoSingularity,
    NotCorankOne,
    NotFrontal,
    NotOrthogonal,
    NotSingular,
    DegenerateSecond,
    OrderExceedsTruncation,
    ParallelismUnsolvable,
    SingrecError,
)
from .expr import CurveGerm, Expr, MapGerm, evaluate
from .germ import component_rescale, differential_from_jets
from .jets import (
    DEFAULT_ORDER,
    DEFAULT_TOL,
    Jet1,
    Jet2,
    JetPath,
    Tolerance,
    align,
    compose,
    compose2,
    det3,
    dot3,
    vanishing_order,
)

DEFAULT_MAX_K = 6


@dataclass(frozen=True)
class JetMap:
    """A plane-to-space germ given directly by component jets (local coordinates)."""

    components: tuple[Jet2, Jet2, Jet2]

    def jets(self, order: int = DEFAULT_ORDER) -> tuple[Jet2, ...]:
        n = min(order, min(c.order for c in self.components))
        return tuple(c.truncated(n) for c in self.components)


NormalSpec = str | tuple  # "auto", three Expr, or three Jet2


@dataclass(frozen=True)
class FrontalGerm:
    """A map germ together with the specification of its normal field."""

    map: MapGerm | JetMap
    normal: NormalSpec = "auto"


@dataclass(frozen=True)
class AreaData:
    lam: Jet2
    dlambda: np.ndarray
    nondegenerate: bool


@dataclass(frozen=True)
class SingularData:
    lam: Jet2
    dlambda: np.ndarray
    gamma: JetPath
    gamma_hat: tuple[Jet1, Jet1, Jet1]
    eta: tuple[Jet1, Jet1]  # oriented: (gamma'(0), eta(0)) is a positive basis
    transversal: bool
    orientation_sign: int


@dataclass(frozen=True)
class PsiData:
    psi: Jet1
    order_k: int
    leading_b: float  # psi^(k)(0)


@dataclass(frozen=True)
class BData:
    curve: JetPath
    c_hat: tuple[Jet1, Jet1, Jet1]
    ell: float
    a_value: float


def _mul(a, b):
    a, b = align(a, b)
    return a * b


def _add(a, b):
    a, b = align(a, b)
    return a + b


# ---------------------------------------------------------------------------
# normal field
# ---------------------------------------------------------------------------


def _monomial_content(comps: tuple[Jet2, ...], tol: Tolerance) -> tuple[int, int]:
    """Largest (a, b) with u^a v^b dividing every component, by min exponents."""
    scale = max(c.max_abs() for c in comps)
    thr = tol.threshold(scale)
    min_i = min_j = None
    for c in comps:
        idx = np.argwhere(np.abs(c.coeffs) > thr)
        if idx.size == 0:
            continue  # a zero component divides anything
        lo_i, lo_j = idx[:, 0].min(), idx[:, 1].min()
        min_i = lo_i if min_i is None else min(min_i, lo_i)
        min_j = lo_j if min_j is None else min(min_j, lo_j)
    if min_i is None:
        raise NotFrontal("tangent cross product vanishes identically at this order")
    return int(min_i), int(min_j)


def _divide_monomial(c: Jet2, a: int, b: int) -> Jet2:
    n = c.order - a - b
    return Jet2(c.coeffs[a : a + n + 1, b : b + n + 1], n)


def _graph_solve(field: Jet2, solve_axis: int) -> Jet1:
    """Coefficients of g with field(t, g(t)) = 0 (or the mirrored graph).

    The linear coefficient of ``field`` along ``solve_axis`` pins each
    Taylor coefficient of g in turn.
    """
    n = field.order
    slope = float(field.coeffs[(1, 0) if solve_axis == 0 else (0, 1)])
    t = Jet1.variable(0.0, n)
    w = np.zeros(n + 1)
    for m in range(1, n + 1):
        comps = [t, t]
        comps[solve_axis] = Jet1(w)
        residual = compose(field, JetPath(*comps))
        w[m] -= float(residual.coeffs[m]) / slope
    return Jet1(w)


def _promote1(j: Jet1, axis: int) -> Jet2:
    coeffs = np.zeros((j.order + 1, j.order + 1))
    if axis == 0:
        coeffs[:, 0] = j.coeffs
    else:
        coeffs[0, :] = j.coeffs
    return Jet2(coeffs, j.order)


def _curve_factor_content(comps: tuple[Jet2, ...], tol: Tolerance):
    """Divide out a common factor vanishing on a regular curve through 0.

    The common factor of the components need not be a monomial (for
    example (v - u^2)^m).  When the lowest-valuation component has a
    nonzero linear part, its zero set is a graph; in coordinates
    straightened along that graph the factor becomes a monomial and the
    usual content extraction applies.  Returns the divided components, or
    None when no structure is found.
    """
    scale = max(c.max_abs() for c in comps)
    thr = tol.threshold(scale)
    best = None
    for c in comps:
        idx = np.argwhere(np.abs(c.coeffs) > thr)
        if idx.size == 0:
            continue
        val = int(np.min(idx.sum(axis=1)))
        if best is None or val < best[0]:
            best = (val, c)
    if best is None or best[0] == 0:
        return None
    pilot = best[1]
    lin = np.array([float(pilot.coeffs[1, 0]), float(pilot.coeffs[0, 1])])
    if np.linalg.norm(lin) <= thr:
        return None  # multiple factor with no linear part; give up
    solve_axis = int(np.argmax(np.abs(lin)))
    param_axis = 1 - solve_axis
    g = _graph_solve(pilot, solve_axis)
    order = min(c.order for c in comps)

    def straighten(c, sign):
        m = min(c.order, order)
        shift = _promote1(g.truncated(m), param_axis)
        var_p = Jet2.variable(param_axis, 0.0, m)
        var_s = Jet2.variable(solve_axis, 0.0, m)
        sub = [None, None]
        sub[param_axis] = var_p
        sub[solve_axis] = var_s + shift if sign > 0 else var_s - shift
        return compose2(c.truncated(m), sub[0], sub[1])

    tilde = tuple(straighten(c, +1) for c in comps)
    a, b = _monomial_content(tilde, tol)
    if a == 0 and b == 0:
        return None
    divided = tuple(_divide_monomial(c, a, b) for c in tilde)
    return tuple(straighten(c, -1) for c in divided)


def _check_orthogonal(fjets, nu, tol: Tolerance):
    fu = tuple(c.diff(0) for c in fjets)
    fv = tuple(c.diff(1) for c in fjets)
    for tang in (fu, fv):
        scale = max(t.max_abs() for t in tang) * max(n.max_abs() for n in nu)
        residual = dot3(tang, nu).max_abs()
        if residual > tol.threshold(scale):
            raise NotOrthogonal(
                f"normal field is not orthogonal to the tangents "
                f"(residual {residual:.3e}, scale {scale:.3e})"
            )


def resolve_normal(
    g: FrontalGerm, order: int = DEFAULT_ORDER, tol: Tolerance = DEFAULT_TOL
) -> tuple[Jet2, Jet2, Jet2]:
    """Produce the normal field as jets and verify the frontal contract."""
    fjets = g.map.jets(order)
    spec = g.normal
    if isinstance(spec, str):
        if spec != "auto":
            raise ValueError(f"unknown normal mode {spec!r}")
        fu = tuple(c.diff(0) for c in fjets)
        fv = tuple(c.diff(1) for c in fjets)
        raw = (
            _mul(fu[1], fv[2]) - _mul(fu[2], fv[1]),
            _mul(fu[2], fv[0]) - _mul(fu[0], fv[2]),
            _mul(fu[0], fv[1]) - _mul(fu[1], fv[0]),
        )
        a, b = _monomial_content(raw, tol)
        nu = tuple(_divide_monomial(c, a, b) for c in raw)
        value0 = np.array([c.value() for c in nu])
        if np.linalg.norm(value0) <= tol.threshold(max(c.max_abs() for c in nu)):
            # the common factor may vanish on a curve rather than an axis
            extracted = _curve_factor_content(nu, tol)
            if extracted is not None:
                nu = extracted
    elif isinstance(spec[0], Expr):
        if not isinstance(g.map, MapGerm):
            raise ValueError("expression normals require an expression-backed map")
        env = {
            g.map.variables[0]: Jet2.variable(0, g.map.base_point[0], order),
            g.map.variables[1]: Jet2.variable(1, g.map.base_point[1], order),
        }
        nu = tuple(evaluate(e, env) for e in spec)
    else:
        nu = tuple(spec)

    value = np.array([c.value() for c in nu])
    scale = max(c.max_abs() for c in nu)
    if np.linalg.norm(value) <= tol.threshold(scale):
        raise NotFrontal(
            "normal field vanishes at the base point; supply an explicit normal"
        )
    _check_orthogonal(fjets, nu, tol)
    return nu


# ---------------------------------------------------------------------------
# area density, singular curve, null field
# ---------------------------------------------------------------------------


def area_density(
    fjets: tuple[Jet2, ...], nu: tuple[Jet2, ...], tol: Tolerance = DEFAULT_TOL
) -> AreaData:
    fu = tuple(c.diff(0) for c in fjets)
    fv = tuple(c.diff(1) for c in fjets)
    lam = det3((fu, fv, nu))
    calc = 1.0
    for col in (fu, fv, nu):
        calc *= max(max(c.max_abs() for c in col), 1e-300)
    scale = max(lam.max_abs(), calc)
    if not tol.is_zero(lam.value(), scale):
        raise NoSingularity(f"area density is {lam.value():.6g} at the base point")
    dlam = np.array([float(lam.coeffs[1, 0]), float(lam.coeffs[0, 1])])
    nondeg = bool(np.linalg.norm(dlam) > tol.threshold(scale))
    return AreaData(lam, dlam, nondeg)


def singular_curve(area: AreaData, tol: Tolerance = DEFAULT_TOL) -> JetPath:
    """Solve lambda(gamma(t)) = 0 for the singular curve, order by order.

    The curve is written as a graph over the coordinate whose lambda-partial
    is smaller; the other coordinate is solved from the linearization, which
    pins each Taylor coefficient exactly.
    """
    if not area.nondegenerate:
        raise DegenerateSingularity("d lambda vanishes at the base point")
    lam = area.lam
    solve_axis = int(np.argmax(np.abs(area.dlambda)))
    w = _graph_solve(lam, solve_axis)
    comps = [Jet1.variable(0.0, lam.order), Jet1.variable(0.0, lam.order)]
    comps[solve_axis] = w
    gamma = JetPath(*comps)
    residual = compose(lam, gamma)
    if residual.max_abs() > tol.threshold(lam.max_abs()):
        raise DegenerateSingularity("singular-curve solve did not converge")
    return gamma


def null_field(
    fjets: tuple[Jet2, ...], gamma: JetPath, tol: Tolerance = DEFAULT_TOL
) -> tuple[tuple[Jet1, Jet1], bool, int]:
    """Kernel field of df along the singular curve, orientation-normalized.

    The larger kernel component at the base point is pinned to 1 and the
    other solved as a jet; the whole field is then flipped so that
    (gamma'(0), eta(0)) is a positive basis.  Returns (eta, transversal,
    orientation_sign).
    """
    data = differential_from_jets(fjets, tol)
    if data.corank != 1:
        raise NotCorankOne(f"corank is {data.corank} at the base point")
    beta = int(np.argmax(np.abs(data.kernel_dir)))
    alpha = 1 - beta
    col_a = [compose(c.diff(alpha), gamma) for c in fjets]
    col_b = [compose(c.diff(beta), gamma) for c in fjets]
    row = int(np.argmax([abs(c.value()) for c in col_a]))
    eta_alpha = -(col_b[row] / col_a[row])
    eta_alpha, one = align(eta_alpha, Jet1.constant(1.0, gamma.order))
    # the remaining rows must vanish on (eta_alpha, 1): kernel is 1-dimensional.
    # Rows may cancel to rounding noise, so the residual is measured against
    # the scale of the whole system, not the row's own (possibly tiny) size.
    scale = max(
        max(c.max_abs() for c in col_a), max(c.max_abs() for c in col_b), 1e-300
    ) * max(eta_alpha.max_abs(), 1.0)
    for i in range(3):
        if i == row:
            continue
        resid = _add(_mul(col_a[i], eta_alpha), col_b[i])
        if resid.max_abs() > tol.threshold(scale) * 1e3:
            raise NotCorankOne(
                "kernel of df is not one-dimensional along the singular curve"
            )
    eta = [one, one]
    eta[alpha] = eta_alpha
    eta0 = np.array([eta[0].value(), eta[1].value()])
    vel = gamma.velocity()
    d = float(vel[0] * eta0[1] - vel[1] * eta0[0])
    transversal = abs(d) > tol.threshold(np.linalg.norm(vel) * np.linalg.norm(eta0))
    sign = -1 if d < 0 else 1
    if sign < 0:
        eta = [c.scaled(-1.0) for c in eta]
    return (eta[0], eta[1]), transversal, sign


# ---------------------------------------------------------------------------
# psi series and the test-curve data
# ---------------------------------------------------------------------------


def psi_series(
    fjets: tuple[Jet2, ...],
    nu: tuple[Jet2, ...],
    sing: SingularData,
    tol: Tolerance = DEFAULT_TOL,
    max_k: int = DEFAULT_MAX_K,
) -> PsiData:
    gamma = sing.gamma
    dfhat = tuple(c.diff() for c in sing.gamma_hat)
    nu_gamma = tuple(compose(c, gamma) for c in nu)
    dnu = tuple(
        _add(
            _mul(compose(c.diff(0), gamma), sing.eta[0]),
            _mul(compose(c.diff(1), gamma), sing.eta[1]),
        )
        for c in nu
    )
    psi = det3((dfhat, nu_gamma, dnu))
    calc = 1.0
    for col in (dfhat, nu_gamma, dnu):
        calc *= max(max(c.max_abs() for c in col), 1e-300)
    k, lead = vanishing_order(psi, tol, max_k, scale=calc)
    return PsiData(psi, k, lead)


def _deriv_forms(fjets: tuple[Jet2, ...], eta0: np.ndarray):
    """Second and third derivative data of f at 0 contracted with the null direction."""
    e1, e2 = eta0
    q2, t3, s1, s2 = [], [], [], []
    for c in fjets:
        a = c.coeffs
        q2.append(e1 * e1 * 2 * a[2, 0] + 2 * e1 * e2 * a[1, 1] + e2 * e2 * 2 * a[0, 2])
        t3.append(
            e1**3 * 6 * a[3, 0]
            + 3 * e1**2 * e2 * 2 * a[2, 1]
            + 3 * e1 * e2**2 * 2 * a[1, 2]
            + e2**3 * 6 * a[0, 3]
        )
        s1.append(e1 * 2 * a[2, 0] + e2 * a[1, 1])
        s2.append(e1 * a[1, 1] + e2 * 2 * a[0, 2])
    return np.array(q2), np.array(t3), np.column_stack([s1, s2])


def condition_b_curve(
    fjets: tuple[Jet2, ...], sing: SingularData, tol: Tolerance = DEFAULT_TOL
) -> BData:
    """Construct one admissible test curve and evaluate the fifth-order data.

    The curve is c(t) = t eta0 + t^2/2 w2 + t^3/6 w3 with (w2, ell, w3) the
    least-norm solution making the third derivative of the image parallel to
    the second.  The criterion outcome does not depend on which admissible
    curve is used, so a single canonical solution decides.
    """
    eta0 = np.array([sing.eta[0].value(), sing.eta[1].value()])
    jac = np.array(
        [[float(c.coeffs[1, 0]), float(c.coeffs[0, 1])] for c in fjets]
    )
    q2, t3, s_mat = _deriv_forms(fjets, eta0)
    m = np.array([float(c.coeffs[1]) for c in sing.gamma_hat])

    scale2 = max(
        max(abs(2 * c.coeffs[2, 0]), abs(c.coeffs[1, 1]), abs(2 * c.coeffs[0, 2]))
        for c in fjets
    ) * max(1.0, float(np.dot(eta0, eta0)))
    if np.linalg.norm(q2) <= tol.threshold(scale2):
        raise CurveDegenerate(
            "second derivative of the image vanishes along the null direction"
        )

    # Parallelism in the quotient by the image line: cross(m, .) kills the
    # df-correction terms, leaving a linear system in (w2, ell).
    sys = np.column_stack(
        [
            3 * np.cross(m, s_mat[:, 0]),
            3 * np.cross(m, s_mat[:, 1]),
            -np.cross(m, q2),
        ]
    )
    rhs = -np.cross(m, t3)
    sol, *_ = np.linalg.lstsq(sys, rhs, rcond=None)
    scale_sys = max(np.max(np.abs(sys)), np.max(np.abs(rhs)), 1.0) * max(
        1.0, np.max(np.abs(sol))
    )
    if np.linalg.norm(sys @ sol - rhs) > tol.threshold(scale_sys):
        raise ParallelismUnsolvable(
            "no curve makes the third image derivative parallel to the second"
        )
    w2, ell0 = sol[:2], sol[2]
    # The image-line component is matched exactly through the cubic term.
    rhs3 = ell0 * (q2 + jac @ w2) - (t3 + 3 * s_mat @ w2)
    w3, *_ = np.linalg.lstsq(jac, rhs3, rcond=None)
    scale3 = max(np.max(np.abs(jac)), np.max(np.abs(rhs3)), 1.0) * max(
        1.0, np.max(np.abs(w3))
    )
    if np.linalg.norm(jac @ w3 - rhs3) > tol.threshold(scale3):
        raise ParallelismUnsolvable(
            "cubic curve correction does not close the parallelism constraint"
        )

    order = min(c.order for c in fjets)
    coeffs = np.zeros((2, order + 1))
    coeffs[:, 1] = eta0
    coeffs[:, 2] = w2 / 2.0
    coeffs[:, 3] = w3 / 6.0
    path = JetPath(Jet1(coeffs[0]), Jet1(coeffs[1]))
    return _bdata_from_path(fjets, sing, path, tol)


def _bdata_from_path(
    fjets: tuple[Jet2, ...],
    sing: SingularData,
    path: JetPath,
    tol: Tolerance = DEFAULT_TOL,
) -> BData:
    """Evaluate the fifth-order cusp data on a given admissible curve."""
    c_hat = tuple(compose(c, path) for c in fjets)
    d = [
        np.array([float(c.coeffs[k]) * math.factorial(k) for c in c_hat])
        for k in range(6)
    ]
    scale = max(c.max_abs() for c in c_hat)
    if np.linalg.norm(d[2]) <= tol.threshold(scale):
        raise CurveDegenerate("image of the test curve has vanishing second derivative")
    ell = float(np.dot(d[3], d[2]) / np.dot(d[2], d[2]))
    if np.linalg.norm(d[3] - ell * d[2]) > tol.threshold(
        max(np.linalg.norm(d[3]), np.linalg.norm(d[2]))
    ) * 1e3:
        raise ParallelismUnsolvable(
            "third image derivative is not parallel to the second on the test curve"
        )
    m = np.array([float(c.coeffs[1]) for c in sing.gamma_hat])
    a = float(np.linalg.det(np.column_stack([m, d[2], 3 * d[5] - 10 * ell * d[4]])))
    return BData(path, c_hat, ell, a)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrontalAnalysis:
    nu: tuple[Jet2, ...] | None
    area: AreaData | None
    sing: SingularData | None
    psi: PsiData | None
    bdata: BData | None
    classification: Classification


def analyze_frontal_jets(
    fjets: tuple[Jet2, ...],
    nu: tuple[Jet2, ...],
    tol: Tolerance = DEFAULT_TOL,
    max_k: int = DEFAULT_MAX_K,
) -> FrontalAnalysis:
    """Run the pipeline on resolved jets; failures become diagnosed results."""
    # Badly scaled components are snapped to unit size (with the normal
    # carried along by the inverse-transpose diagonal, preserving
    # orthogonality); every gate and sign is invariant under this.
    fjets, scales = component_rescale(fjets)
    if np.any(scales != 1.0):
        nu = tuple(c.scaled(s) for c, s in zip(nu, scales))
    nu_max = max(c.max_abs() for c in nu)
    if nu_max > 0.0 and not (1e-3 <= nu_max <= 1e3):
        nu = tuple(c.scaled(1.0 / nu_max) for c in nu)
    diag: dict = {}
    area = sing = psi = bdata = None
    try:
        area = area_density(fjets, nu, tol)
        diag["dlambda"] = area.dlambda.tolist()
        if not area.nondegenerate:
            raise DegenerateSingularity("d lambda vanishes at the base point")
        gamma = singular_curve(area, tol)
        gamma_hat = tuple(compose(c, gamma) for c in fjets)
        eta, transversal, orient = null_field(fjets, gamma, tol)
        sing = SingularData(
            area.lam, area.dlambda, gamma, gamma_hat, eta, transversal, orient
        )
        diag["condition_a"] = bool(area.nondegenerate and transversal)
        if not transversal:
            return FrontalAnalysis(
                nu, area, sing, None, None,
                unrecognized("null_direction_tangent_to_singular_curve", **diag),
            )
        psi = psi_series(fjets, nu, sing, tol, max_k)
        diag["psi_coefficients"] = psi.psi.coeffs.tolist()
        diag["order_k"] = psi.order_k
        diag["leading_b"] = psi.leading_b
        diag["condition_c"] = True
        k = psi.order_k
        if k == 0:
            return FrontalAnalysis(
                nu, area, sing, psi, None,
                Classification(Kind.CUSPIDAL_EDGE, diagnostics=diag),
            )
        if k == 1:
            return FrontalAnalysis(nu, area, sing, psi, None, cuspidal_sk(0, None, **diag))
        bdata = condition_b_curve(fjets, sing, tol)
        diag["ell"] = bdata.ell
        diag["a_value"] = bdata.a_value
        diag["ab_product"] = bdata.a_value * psi.leading_b
        col_scale = (
            np.linalg.norm([c.coeffs[1] for c in sing.gamma_hat])
            * np.linalg.norm([2 * c.coeffs[2] for c in bdata.c_hat])
            * max(
                np.linalg.norm(
                    [3 * math.factorial(5) * c.coeffs[5] for c in bdata.c_hat]
                ),
                1.0,
            )
        )
        if abs(bdata.a_value) <= tol.threshold(col_scale):
            diag["condition_b"] = False
            return FrontalAnalysis(
                nu, area, sing, psi, bdata, unrecognized("fifth_order_data_vanishes", **diag)
            )
        diag["condition_b"] = True
        sign = None
        if k % 2 == 0:
            sign = 1 if diag["ab_product"] > 0 else -1
        return FrontalAnalysis(nu, area, sing, psi, bdata, cuspidal_sk(k - 1, sign, **diag))
    except NoSingularity:
        return FrontalAnalysis(nu, area, sing, psi, bdata, regular(**diag))
    except OrderExceedsTruncation as exc:
        diag["error"] = str(exc)
        return FrontalAnalysis(
            nu, area, sing, psi, bdata, unrecognized("psi_order_exceeds_truncation", **diag)
        )
    except SingrecError as exc:
        diag["error"] = str(exc)
        reason = {
            DegenerateSingularity: "degenerate_singular_point",
            NotCorankOne: "not_corank_one",
            CurveDegenerate: "test_curve_degenerate",
            ParallelismUnsolvable: "parallelism_unsolvable",
        }.get(type(exc), "pipeline_error")
        return FrontalAnalysis(nu, area, sing, psi, bdata, unrecognized(reason, **diag))


def analyze_frontal(
    g: FrontalGerm,
    order: int = DEFAULT_ORDER,
    tol: Tolerance = DEFAULT_TOL,
    max_k: int = DEFAULT_MAX_K,
) -> FrontalAnalysis:
    try:
        nu = resolve_normal(g, order, tol)
    except (NotFrontal, NotOrthogonal) as exc:
        reason = "not_frontal" if isinstance(exc, NotFrontal) else "normal_not_orthogonal"
        return FrontalAnalysis(None, None, None, None, None,
                               unrecognized(reason, error=str(exc)))
    return analyze_frontal_jets(g.map.jets(order), nu, tol, max_k)


def classify_frontal(
    g: FrontalGerm,
    order: int = DEFAULT_ORDER,
    tol: Tolerance = DEFAULT_TOL,
    max_k: int = DEFAULT_MAX_K,
) -> Classification:
    return analyze_frontal(g, order, tol, max_k).classification


# ---------------------------------------------------------------------------
# the (2,5)-cusp test for space curves
# ---------------------------------------------------------------------------


def classify_curve_cusp25(
    c: CurveGerm, tol: Tolerance = DEFAULT_TOL, order: int = DEFAULT_ORDER
) -> Classification:
    """Decide whether a space curve germ is a (2,5)-cusp.

    Requires a singular point with non-vanishing second derivative; the
    decision compares the second derivative with 3 c^(5) - 10 ell c^(4),
    where ell is the proportionality factor of the (necessarily parallel)
    third derivative.
    """
    cjets = c.jets(max(order, 5))
    d = [
        np.array([float(j.coeffs[k]) * math.factorial(k) for j in cjets])
        for k in range(6)
    ]
    scale = max(j.max_abs() for j in cjets)
    diag = {f"c{k}": d[k].tolist() for k in range(1, 6)}
    if np.linalg.norm(d[1]) > tol.threshold(scale):
        raise NotSingular("curve has nonzero velocity at the base point")
    if np.linalg.norm(d[2]) <= tol.threshold(scale):
        raise DegenerateSecond("curve has vanishing second derivative at the base point")
    if np.linalg.norm(np.cross(d[2], d[3])) > tol.threshold(
        np.linalg.norm(d[2]) * np.linalg.norm(d[3])
    ):
        return Classification(
            Kind.NOT_CUSP25, reasons=("third_derivative_transverse",), diagnostics=diag
        )
    ell = float(np.dot(d[3], d[2]) / np.dot(d[2], d[2]))
    w = 3 * d[5] - 10 * ell * d[4]
    diag["ell"] = ell
    diag["fifth_order_vector"] = w.tolist()
    independent = np.linalg.norm(np.cross(d[2], w)) > tol.threshold(
        np.linalg.norm(d[2]) * np.linalg.norm(w)
    )
    if independent:
        return Classification(Kind.CUSP25, diagnostics=diag)
    return Classification(
        Kind.NOT_CUSP25, reasons=("fifth_order_degenerate",), diagnostics=diag
    )
