"""Corank-one analysis and the determinant criterion.

Frozen oracle values (hand expansion, cross-checked symbolically):

  f = (x, y^2, y x^2 - y^3):  phi = -2x^2 - 6y^2,  Hess det  48   -> S1-
  f = (x, y^2, y x^2 + y^3):  phi = -2x^2 + 6y^2,  Hess det -48   -> S1+
  f = (x, y^2, y^3):          phi = 6y^2,          Hess det   0
  f = (x, y^2, x y):          phi = -2x (gradient nonzero)        -> cross cap
  f = (x, xy + y^3, xy + 2y^3): phi = 6xy, Hess det -36, but
      xi f(0) and eta eta f(0) are dependent -> definitive negative
"""

import numpy as np
import pytest

from conftest import random_diffeo_exprs, source_transform, target_transform
from singrec.errors import NotCorankOne
from singrec.expr import parse_map
from singrec.germ import (
    classify_corank1,
    classify_corank1_jets,
    differential,
    null_frame,
    phi_field,
    phi_field_from_jets,
    null_frame_from_jets,
)
from singrec.jets import Jet2, Tolerance


def test_differential_examples():
    d = differential(parse_map("(u, v^2, v^3)"))
    assert (d.rank, d.corank) == (1, 1)
    assert np.allclose(d.kernel_dir, [0, 1])
    assert differential(parse_map("(u, v, 0)")).corank == 0
    assert differential(parse_map("(u^2, v^2, u*v)")).corank == 2


def test_null_frame_examples():
    fr = null_frame(parse_map("(u, v^2, v^3)"))
    assert np.allclose(fr.xi, [1, 0]) and np.allclose(fr.eta, [0, 1])
    fr = null_frame(parse_map("(v, u^2, u^3)"))
    assert np.allclose(fr.xi, [0, 1]) and np.allclose(np.abs(fr.eta), [1, 0])
    with pytest.raises(NotCorankOne):
        null_frame(parse_map("(u, v, 0)"))


@pytest.mark.parametrize(
    "text,c20,c02,hess_det,indep",
    [
        ("(u, v^2, v*u^2 - v^3)", -2.0, -6.0, 48.0, True),
        ("(u, v^2, v*u^2 + v^3)", -2.0, 6.0, -48.0, True),
        ("(u, v^2, v^3)", 0.0, 6.0, 0.0, True),
    ],
)
def test_phi_frozen_values(text, c20, c02, hess_det, indep):
    m = parse_map(text)
    pd = phi_field(m, null_frame(m))
    assert pd.phi.coeffs[2, 0] == pytest.approx(c20, abs=1e-12)
    assert pd.phi.coeffs[0, 2] == pytest.approx(c02, abs=1e-12)
    assert pd.hess_det == pytest.approx(hess_det, abs=1e-9)
    assert np.allclose(pd.gradient, 0.0, atol=1e-12)
    assert pd.indep_test == indep


def test_classification_examples():
    assert classify_corank1(parse_map("(u, v^2, v*(u^2+v^2))")).label == "S1+"
    assert classify_corank1(parse_map("(u, v^2, v*(u^2-v^2))")).label == "S1-"
    neg = classify_corank1(parse_map("(u, u*v + v^3, u*v + 2*v^3)"))
    assert neg.label == "unrecognized"
    assert "indep_test_failed" in neg.reasons
    assert neg.diagnostics["hess_det"] == pytest.approx(-36.0)
    cc = classify_corank1(parse_map("(u, v^2, u*v)"))
    assert cc.label == "cross_cap"
    assert classify_corank1(parse_map("(u, v, 0)")).label == "regular"
    assert classify_corank1(parse_map("(u^2, v^2, u*v)")).reasons == ("corank_two",)


def test_frame_invariance(rng):
    """Criterion predicates are invariant under admissible frame changes.

    Admissible: (xi', eta') = A (xi, eta) with A invertible and the
    eta'-row having no xi component at the origin.
    """
    for text in ["(u, v^2, v*(u^2+v^2))", "(u, v^2, v*(u^2-v^2))",
                 "(u, v^2, u*v)", "(u, u*v + v^3, u*v + 2*v^3)"]:
        m = parse_map(text)
        fjets = m.jets(9)
        frame = null_frame_from_jets(fjets)
        tol = Tolerance()

        def predicates(pd):
            grad_zero = all(
                tol.is_zero(g, max(pd.phi.max_abs(), pd.calc_scale))
                for g in pd.gradient
            )
            hess_norm = float(np.max(np.abs(pd.hessian)))
            degenerate = tol.is_zero(hess_norm, pd.calc_scale) or tol.is_zero(
                pd.hess_det, hess_norm**2
            )
            sign = 0 if degenerate else int(np.sign(pd.hess_det))
            return (grad_zero, sign, pd.indep_test)

        base_preds = predicates(phi_field_from_jets(fjets, frame))
        for _ in range(100):
            a11, a12, a22 = rng.uniform(-2, 2, 3)
            while abs(a11 * a22) < 1e-2:
                a11, a12, a22 = rng.uniform(-2, 2, 3)
            frame2 = type(frame)(
                xi=a11 * frame.xi + a12 * frame.eta, eta=a22 * frame.eta
            )
            preds = predicates(phi_field_from_jets(fjets, frame2))
            assert preds == base_preds, (text, frame2)


@pytest.mark.parametrize(
    "text",
    ["(u, v^2, v*(u^2+v^2))", "(u, v^2, v*(u^2-v^2))", "(u, v^2, u*v)"],
)
def test_source_and_target_invariance(rng, text):
    m = parse_map(text)
    fjets = m.jets(9)
    want = classify_corank1_jets(fjets).label
    for trial in range(100):
        if trial % 2 == 0:
            phi = random_diffeo_exprs(rng, ("u", "v"))
            new_f, _ = source_transform(fjets, None, phi, 9)
        else:
            phi = random_diffeo_exprs(rng, ("x", "y", "z"))
            new_f, _ = target_transform(fjets, None, phi, 9)
        assert classify_corank1_jets(tuple(new_f)).label == want


def test_three_determinacy():
    # classification equal on the degree-3 Taylor polynomial for S1 results
    for text in ["(u, v^2, v*(u^2+v^2) + u^4*v)", "(u, v^2 + u^3*v^2, v*(u^2-v^2))"]:
        m = parse_map(text)
        full = classify_corank1(m)
        assert full.label in ("S1+", "S1-")
        truncated = tuple(Jet2(j.coeffs[:4, :4], 3) for j in m.jets(9))
        jet3 = tuple(Jet2(np.pad(j.coeffs, (0, 6)), 9) for j in truncated)
        assert classify_corank1_jets(jet3).label == full.label
