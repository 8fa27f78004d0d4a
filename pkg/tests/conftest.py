"""Shared test fixtures: the germ battery and random coordinate changes.

Coordinate changes are applied at jet level: a source change substitutes a
plane diffeomorphism into the component jets, a target change evaluates the
new chart on them.  The normal field of a frontal germ is carried along by
the corresponding transformation rules (pullback for source changes, the
inverse-transpose of the chart differential for target changes), so that
the transformed germ is handed to the classifier together with a valid
normal field.
"""

from __future__ import annotations

import numpy as np
import pytest

from singrec import expr
from singrec.expr import evaluate, parse_map, parse_scalar
from singrec.frontal import FrontalGerm, JetMap, resolve_normal
from singrec.jets import Jet2, align, compose2

# (text, expected label, frontal?) -- the normal-form battery
BATTERY = [
    ("(u, v^2, v*(u^2 + v^2))", "S1+", False),
    ("(u, v^2, v*(u^2 - v^2))", "S1-", False),
    ("(u, v^2, v^3*(u + v^2))", "cCR", True),
    ("(u, v^2, v^3*(u - v^2))", "cCR", True),
    ("(u, v^2, v^3*(u^2 + v^2))", "cS1+", True),
    ("(u, v^2, v^3*(u^2 - v^2))", "cS1-", True),
    ("(u, v^2, v^3*(u^3 + v^2))", "cS2", True),
    ("(u, v^2, v^3*(u^3 - v^2))", "cS2", True),
    ("(u, v^2, v^3*(u^4 + v^2))", "cS3+", True),
    ("(u, v^2, v^3*(u^4 - v^2))", "cS3-", True),
    ("(u, v^2, v^3*(u^5 + v^2))", "cS4", True),
    ("(u, v^2, v^3*(u^5 - v^2))", "cS4", True),
    ("(u, v^2, u*v)", "cross_cap", False),
    ("(u, v^2, v^3)", "cuspidal_edge", True),
]

TARGET_VARS = ("x", "y", "z")


def random_invertible(rng: np.random.Generator, n: int, cond_max: float = 1e3) -> np.ndarray:
    while True:
        mat = rng.uniform(-1.0, 1.0, (n, n))
        if abs(np.linalg.det(mat)) > 1e-2 and np.linalg.cond(mat) <= cond_max:
            return mat


def random_diffeo_exprs(rng, variables, degree: int = 3, amp: float = 0.4):
    """Polynomial diffeomorphism germ fixing the origin, as expressions."""
    n = len(variables)
    lin = random_invertible(rng, n)
    comps = []
    for i in range(n):
        parts = [f"{float(lin[i, j])!r}*{variables[j]}" for j in range(n)]
        for exps in _monomials(n, 2, degree):
            coef = float(rng.uniform(-amp, amp))
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(variables, exps) if e
            )
            parts.append(f"{coef!r}*{mono}")
        comps.append(parse_scalar(" + ".join(parts), variables))
    return tuple(comps)


def _monomials(nvars: int, lo: int, hi: int):
    def rec(prefix, remaining):
        if remaining == 1:
            yield prefix + (sum_left - sum(prefix),)
            return
        for e in range(sum_left - sum(prefix) + 1):
            yield from rec(prefix + (e,), remaining - 1)

    for sum_left in range(lo, hi + 1):
        yield from rec((), nvars)


def diffeo_jets(diffeo, variables, order):
    env = {v: Jet2.variable(i, 0.0, order) for i, v in enumerate(variables)}
    return tuple(evaluate(c, env) for c in diffeo)


def source_transform(fjets, nu, diffeo, order):
    """(f, nu) -> (f . phi, nu . phi) for a plane diffeomorphism phi."""
    p1, p2 = diffeo_jets(diffeo, ("u", "v"), order)
    new_f = tuple(compose2(c, p1, p2) for c in fjets)
    new_nu = None
    if nu is not None:
        new_nu = tuple(compose2(c, p1, p2) for c in nu)
    return new_f, new_nu


def target_transform(fjets, nu, diffeo, order):
    """(f, nu) -> (Phi . f, (dPhi . f)^(-T) nu) for a space diffeomorphism Phi."""
    env = dict(zip(TARGET_VARS, fjets))
    new_f = tuple(evaluate(c, env) for c in diffeo)
    new_nu = None
    if nu is not None:
        dphi = [
            [evaluate(expr.differentiate(c, v), env) for v in TARGET_VARS]
            for c in diffeo
        ]
        new_nu = _inv_transpose_apply(dphi, nu)
    return new_f, new_nu


def _inv_transpose_apply(mat, vec):
    """(M^-T) vec for a 3x3 matrix of jets: cofactors over the determinant."""

    def cof(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        a, b, cc, d = align(
            mat[r[0]][c[0]], mat[r[0]][c[1]], mat[r[1]][c[0]], mat[r[1]][c[1]]
        )
        minor = a * d - b * cc
        return minor if (i + j) % 2 == 0 else -minor

    cofs = [[cof(i, j) for j in range(3)] for i in range(3)]
    m00, m01, m02, c00, c01, c02 = align(
        mat[0][0], mat[0][1], mat[0][2], cofs[0][0], cofs[0][1], cofs[0][2]
    )
    det = m00 * c00 + m01 * c01 + m02 * c02
    inv_det = 1.0 / det
    out = []
    for i in range(3):
        acc = None
        for j in range(3):
            term_c, term_v = align(cofs[i][j], vec[j])
            term = term_c * term_v
            acc = term if acc is None else _aligned_add(acc, term)
        acc, d = align(acc, inv_det)
        out.append(acc * d)
    return tuple(out)


def _aligned_add(a, b):
    a, b = align(a, b)
    return a + b


def battery_germ(text: str, is_frontal: bool, order: int = 9):
    """Component jets and (for frontal forms) the auto-resolved normal."""
    germ_map = parse_map(text)
    fjets = germ_map.jets(order)
    nu = resolve_normal(FrontalGerm(germ_map, "auto"), order) if is_frontal else None
    return fjets, nu


def as_frontal(fjets, nu) -> FrontalGerm:
    return FrontalGerm(JetMap(tuple(fjets)), tuple(nu) if nu is not None else "auto")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)
