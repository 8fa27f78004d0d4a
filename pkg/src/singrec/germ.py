"""Corank-one analysis of map germs and the determinant criterion built on it.

Everything here works on the local Taylor tables of the three components
around the base point.  The scalar field

    phi = det(xi f, eta f, eta eta f)

with eta spanning the kernel of the differential and xi completing it to a
basis separates the cross cap (d phi != 0) from the S1 pair (critical phi,
sign of det Hess phi), with a linear-independence side condition in the
indefinite case.  Constant vector fields suffice: the criterion values are
invariant under any admissible change of (xi, eta).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classification import Classification, Kind, regular, unrecognized
from .errors import NotCorankOne
from .expr import MapGerm
from .jets import DEFAULT_ORDER, DEFAULT_TOL, Jet2, Tolerance, align, det3


@dataclass(frozen=True)
class DifferentialData:
    jacobian: np.ndarray  # 3x2, at the base point
    rank: int
    corank: int
    kernel_dir: np.ndarray | None  # unit 2-vector when corank == 1


@dataclass(frozen=True)
class Frame:
    """Constant vector fields (xi, eta) with eta spanning ker df at the base point."""

    xi: np.ndarray
    eta: np.ndarray


@dataclass(frozen=True)
class PhiData:
    phi: Jet2
    gradient: np.ndarray
    hessian: np.ndarray
    hess_det: float
    indep_test: bool  # xi f(0) and eta eta f(0) linearly independent
    calc_scale: float = 1.0  # magnitude of the determinant computation


def _jacobian(fjets: tuple[Jet2, ...]) -> np.ndarray:
    return np.array(
        [[float(c.coeffs[1, 0]), float(c.coeffs[0, 1])] for c in fjets]
    )


def component_rescale(
    fjets: tuple[Jet2, ...], band: tuple[float, float] = (1e-2, 1e2)
) -> tuple[tuple[Jet2, ...], np.ndarray]:
    """Rescale badly scaled components to unit maximal coefficient.

    A positive diagonal target scaling, so every criterion outcome is
    unchanged.  Components whose largest coefficient already lies inside
    ``band`` are left alone, which keeps reported diagnostic values in
    their familiar normalization; only far-off scales (as produced by
    fuzzed coordinate changes) are snapped back.  Returns the rescaled
    jets and the scale factors divided out.
    """
    lo, hi = band
    scales = np.ones(len(fjets))
    for i, c in enumerate(fjets):
        m = c.max_abs()
        if m > 0.0 and not (lo <= m <= hi):
            scales[i] = m
    return tuple(c.scaled(1.0 / s) for c, s in zip(fjets, scales)), scales


def differential_from_jets(fjets: tuple[Jet2, ...], tol: Tolerance = DEFAULT_TOL) -> DifferentialData:
    jac = _jacobian(fjets)
    # Rank from singular values against the scale-aware tolerance; this is
    # basis independent, unlike entry-wise tests.
    _, s, vt = np.linalg.svd(jac)
    scale = s[0] if s[0] > 0 else 1.0
    rank = int(np.sum(s > tol.threshold(scale)))
    corank = 2 - rank
    kernel = None
    if corank == 1:
        kernel = vt[1]
        # deterministic sign: largest-magnitude entry positive
        i = int(np.argmax(np.abs(kernel)))
        if kernel[i] < 0:
            kernel = -kernel
    return DifferentialData(jac, rank, corank, kernel)


def differential(f: MapGerm, order: int = DEFAULT_ORDER, tol: Tolerance = DEFAULT_TOL) -> DifferentialData:
    return differential_from_jets(f.jets(order), tol)


def null_frame_from_jets(fjets: tuple[Jet2, ...], tol: Tolerance = DEFAULT_TOL) -> Frame:
    data = differential_from_jets(fjets, tol)
    if data.corank != 1:
        raise NotCorankOne(f"corank is {data.corank}, need 1")
    eta = data.kernel_dir
    # Coordinate direction most transverse to eta, then orthonormalized.
    axis = 0 if abs(eta[1]) >= abs(eta[0]) else 1
    xi = np.zeros(2)
    xi[axis] = 1.0
    xi = xi - np.dot(xi, eta) * eta
    xi /= np.linalg.norm(xi)
    return Frame(xi, eta)


def null_frame(f: MapGerm, order: int = DEFAULT_ORDER, tol: Tolerance = DEFAULT_TOL) -> Frame:
    return null_frame_from_jets(f.jets(order), tol)


def _directional(fjets, direction):
    return tuple(
        c.diff(0).scaled(direction[0]) + c.diff(1).scaled(direction[1]) for c in fjets
    )


def phi_field_from_jets(
    fjets: tuple[Jet2, ...], frame: Frame, tol: Tolerance = DEFAULT_TOL
) -> PhiData:
    xi_f = _directional(fjets, frame.xi)
    eta_f = _directional(fjets, frame.eta)
    eta_eta_f = _directional(eta_f, frame.eta)
    phi = det3((xi_f, eta_f, eta_eta_f))
    # largest magnitude entering the determinant: cancellation noise in any
    # phi coefficient is bounded by rounding at this scale
    calc_scale = 1.0
    for col in (xi_f, eta_f, eta_eta_f):
        calc_scale *= max(max(c.max_abs() for c in col), 1e-300)
    grad = np.array([float(phi.coeffs[1, 0]), float(phi.coeffs[0, 1])])
    hess = np.array(
        [
            [2.0 * phi.coeffs[2, 0], phi.coeffs[1, 1]],
            [phi.coeffs[1, 1], 2.0 * phi.coeffs[0, 2]],
        ]
    )
    hess_det = float(np.linalg.det(hess))
    v1 = np.array([c.value() for c in xi_f])
    v2 = np.array([c.value() for c in eta_eta_f])
    deriv_scale = max(max(c.max_abs() for c in fjets), 1e-300)
    # a second derivative wiped out by cancellation counts as dependent
    v2_zero = np.linalg.norm(v2) <= tol.threshold(deriv_scale)
    indep = (not v2_zero) and np.linalg.norm(np.cross(v1, v2)) > tol.threshold(
        np.linalg.norm(v1) * np.linalg.norm(v2)
    )
    return PhiData(phi, grad, hess, hess_det, bool(indep), calc_scale)


def phi_field(f: MapGerm, frame: Frame, order: int = DEFAULT_ORDER, tol: Tolerance = DEFAULT_TOL) -> PhiData:
    return phi_field_from_jets(f.jets(order), frame, tol)


def classify_corank1_jets(
    fjets: tuple[Jet2, ...], tol: Tolerance = DEFAULT_TOL
) -> Classification:
    fjets, _ = component_rescale(fjets)
    data = differential_from_jets(fjets, tol)
    if data.corank == 0:
        return regular(corank=0)
    if data.corank == 2:
        return unrecognized("corank_two", corank=2)

    frame = null_frame_from_jets(fjets, tol)
    pd = phi_field_from_jets(fjets, frame, tol)
    diag = {
        "corank": 1,
        "phi_gradient": pd.gradient.tolist(),
        "hess_det": pd.hess_det,
        "indep_test": pd.indep_test,
    }

    grad_scale = max(pd.phi.max_abs(), pd.calc_scale)
    if not all(tol.is_zero(g, grad_scale) for g in pd.gradient):
        return Classification(Kind.CROSS_CAP, diagnostics=diag)

    # two-stage: a Hessian that is itself cancellation noise is degenerate;
    # otherwise decide the determinant sign relative to the Hessian's scale
    hess_norm = float(np.max(np.abs(pd.hessian)))
    if tol.is_zero(hess_norm, pd.calc_scale) or tol.is_zero(
        pd.hess_det, hess_norm**2
    ):
        return unrecognized("degenerate_hessian", **diag)
    if pd.hess_det > 0:
        return Classification(Kind.S1_MINUS, diagnostics=diag)
    if pd.indep_test:
        return Classification(Kind.S1_PLUS, diagnostics=diag)
    # det Hess phi < 0 with dependent xi f(0), eta eta f(0): the criterion
    # is an equivalence, so this is a definitive negative, not a gap.
    return unrecognized("indep_test_failed", definitive=True, **diag)


def classify_corank1(
    f: MapGerm, order: int = DEFAULT_ORDER, tol: Tolerance = DEFAULT_TOL
) -> Classification:
    return classify_corank1_jets(f.jets(order), tol)
