"""Jet kernel: frozen series examples, independent oracles, ring properties.

The oracle below manipulates coefficient lists with exact Fraction
arithmetic and shares no code with the jet kernel; composition and the
elementary functions are checked against it through order 8.
"""

from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singrec import jets
from singrec.errors import (
    DivisionBySingular,
    OrderExceedsTruncation,
    OrderMismatch,
    SqrtOfNonpositive,
)
from singrec.jets import (
    Jet1,
    Jet2,
    JetPath,
    Tolerance,
    align,
    compose,
    compose1,
    compose2,
    extract,
    vanishing_order,
)

# --- independent polynomial oracle (exact rationals) -----------------------


def poly_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= order:
                out[i + j] += x * y
    return out


def poly_compose(outer, inner, order):
    """outer(inner(t)) with inner[0] == 0, by Horner."""
    acc = [Fraction(0)] * (order + 1)
    for c in reversed(outer):
        acc = poly_mul(acc, inner, order)
        acc[0] += c
    return acc


EXP_SERIES = [Fraction(1, factorial(k)) for k in range(9)]
SIN_SERIES = [
    Fraction(0) if k % 2 == 0 else Fraction((-1) ** (k // 2), factorial(k))
    for k in range(9)
]
GEOM_SERIES = [Fraction(1)] * 9  # 1/(1-x)


# --- frozen examples --------------------------------------------------------


def test_mul_polynomial_identity():
    t = Jet1.variable(0.0, 3)
    assert np.allclose(((1 + t) * (1 - t)).coeffs, [1, 0, -1, 0])


def test_div_geometric_series():
    t = Jet1.variable(0.0, 3)
    assert np.allclose((1 / (1 - t)).coeffs, [1, 1, 1, 1])


def test_sqrt_binomial_series():
    # oracle: (1+x)^(1/2) = 1 + x/2 - x^2/8 + ... with x = 2t
    t = Jet1.variable(0.0, 2)
    assert np.allclose(jets.sqrt(1 + 2 * t).coeffs, [1.0, 1.0, -0.5])


def test_compose_trivial_substitutions():
    u = Jet2.variable(0, 0.0, 6)
    v = Jet2.variable(1, 0.0, 6)
    t = Jet1.variable(0.0, 6)
    got = compose(u + v**2, JetPath(t, t**2))
    assert np.allclose(got.coeffs, [0, 1, 0, 0, 1, 0, 0])
    got = compose(v**3 * (u**2 + v**2), JetPath(0 * t, t))
    assert np.allclose(got.coeffs, [0, 0, 0, 0, 0, 1, 0])
    got = compose(u * v, JetPath(t**2, t**3))
    assert np.allclose(got.coeffs, [0, 0, 0, 0, 0, 1, 0])


def test_extract_values():
    u = Jet2.variable(0, 0.0, 4)
    v = Jet2.variable(1, 0.0, 4)
    phi = -2 * u**2 - 6 * v**2
    assert extract(phi, 2, 0) == pytest.approx(-4.0)
    assert extract(phi, 0, 0) == 0.0
    assert extract(u * v, 1, 1) == pytest.approx(1.0)
    assert extract(Jet1([3, 1, 5]), 0) == 3.0
    with pytest.raises(OrderExceedsTruncation):
        extract(Jet1([1, 2]), 5)


def test_error_conditions():
    t = Jet1.variable(0.0, 4)
    with pytest.raises(DivisionBySingular):
        1 / t
    with pytest.raises(SqrtOfNonpositive):
        jets.sqrt(t - 1)
    with pytest.raises(OrderMismatch):
        Jet1.variable(0.0, 3) + Jet1.variable(0.0, 4)
    with pytest.raises(OrderMismatch):
        Jet1.variable(0.0, 4) * Jet2.variable(0, 0.0, 4)


def test_vanishing_order():
    assert vanishing_order(Jet1([0, 0, 6, 1, 0, 0])) == (2, 12.0)
    assert vanishing_order(Jet1([6, 0, 0])) == (0, 6.0)
    with pytest.raises(OrderExceedsTruncation):
        vanishing_order(Jet1([0.0] * 7))
    # max_k caps the scan even when later coefficients are nonzero
    with pytest.raises(OrderExceedsTruncation):
        vanishing_order(Jet1([0, 0, 0, 0, 1, 0]), max_k=3)


# --- composition against the exact oracle -----------------------------------


@pytest.mark.parametrize(
    "series,fn",
    [(EXP_SERIES, jets.exp), (SIN_SERIES, jets.sin), (GEOM_SERIES, lambda j: 1 / (1 - j))],
)
def test_univariate_composition_matches_oracle(series, fn):
    # inner curve t + t^3/3 (zero constant term); compare through order 8
    inner = [Fraction(0), Fraction(1), Fraction(0), Fraction(1, 3)] + [Fraction(0)] * 5
    want = [float(c) for c in poly_compose(series, inner, 8)]
    t = Jet1.variable(0.0, 8)
    got = fn(t + t**3 / 3)
    np.testing.assert_allclose(got.coeffs, want, rtol=1e-10, atol=1e-14)


def test_bivariate_composition_matches_oracle():
    # field exp(u + v) composed with path (t^2, t - t^2)
    u = Jet2.variable(0, 0.0, 8)
    v = Jet2.variable(1, 0.0, 8)
    t = Jet1.variable(0.0, 8)
    got = compose(jets.exp(u + v), JetPath(t**2, t - t**2))
    # u + v on the path is exactly t, so the result is the exp series
    np.testing.assert_allclose(
        got.coeffs, [float(c) for c in EXP_SERIES], rtol=1e-10, atol=1e-14
    )
    # and a genuinely 2d one: sin(u*v) on (t, t + t^2)
    got = compose(jets.sin(u * v), JetPath(t, t + t**2))
    inner = [Fraction(0), Fraction(0), Fraction(1), Fraction(1)] + [Fraction(0)] * 5
    want = poly_compose(SIN_SERIES, inner, 8)
    np.testing.assert_allclose(got.coeffs, [float(c) for c in want], rtol=1e-10, atol=1e-14)


def test_compose1_and_compose2():
    t = Jet1.variable(0.0, 8)
    outer = jets.exp(t)
    inner = t * 2 + t**2
    got = compose1(outer, inner)
    want = poly_compose(
        EXP_SERIES, [Fraction(0), Fraction(2), Fraction(1)] + [Fraction(0)] * 6, 8
    )
    np.testing.assert_allclose(got.coeffs, [float(c) for c in want], rtol=1e-10, atol=1e-14)

    u = Jet2.variable(0, 0.0, 6)
    v = Jet2.variable(1, 0.0, 6)
    got2 = compose2(u * v, v, u + v**2)  # u*v -> v*(u + v^2)
    expect = np.zeros((7, 7))
    expect[1, 1] = 1.0
    expect[0, 3] = 1.0
    np.testing.assert_allclose(got2.coeffs, expect, atol=1e-14)


# --- ring properties (hypothesis) -------------------------------------------

coeff = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def jet1s(order):
    return st.lists(coeff, min_size=order + 1, max_size=order + 1).map(Jet1)


def jet2s(order):
    return st.lists(
        st.lists(coeff, min_size=order + 1, max_size=order + 1),
        min_size=order + 1,
        max_size=order + 1,
    ).map(lambda rows: Jet2(np.array(rows), order))


def _rel_close(a, b, rtol):
    scale = max(a.max_abs(), b.max_abs(), 1.0)
    return float(np.max(np.abs(a.coeffs - b.coeffs))) <= rtol * scale


@settings(max_examples=60, deadline=None)
@given(a=jet1s(9), b=jet1s(9), c=jet1s(9))
def test_ring_axioms_jet1(a, b, c):
    assert _rel_close((a * b) * c, a * (b * c), 1e-12)
    assert _rel_close(a * (b + c), a * b + a * c, 1e-12)
    assert _rel_close(a * b, b * a, 1e-12)


@settings(max_examples=30, deadline=None)
@given(a=jet2s(5), b=jet2s(5), c=jet2s(5))
def test_ring_axioms_jet2(a, b, c):
    assert _rel_close((a * b) * c, a * (b * c), 1e-12)
    assert _rel_close(a * (b + c), a * b + a * c, 1e-12)


@settings(max_examples=60, deadline=None)
@given(a=jet1s(9), b=jet1s(9))
def test_inverse_roundtrips(a, b):
    # Division and sqrt are only well-conditioned when the constant term is
    # not dominated by the higher coefficients (the condition number grows
    # like (|b|/b0)^order); the 1e-12 bound applies in that regime.
    tol = Tolerance()
    if abs(b.value()) >= 0.5 * b.max_abs() and not tol.is_zero(b.value(), b.max_abs()):
        assert _rel_close((a * b) / b, a, 1e-12)
    if a.value() > tol.threshold(a.max_abs()) and a.value() >= 0.5 * a.max_abs():
        s = jets.sqrt(a)
        assert _rel_close(s * s, a, 1e-12)


small = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)


@settings(max_examples=40, deadline=None)
@given(
    a=st.lists(st.lists(small, min_size=7, max_size=7), min_size=7, max_size=7).map(
        lambda rows: Jet2(np.array(rows), 6)
    )
)
def test_exp_of_sum_vs_product(a):
    # exp(a)*exp(-a) == 1 at the truncation; bounded inputs keep the series
    # terms from overwhelming the cancellation
    one = jets.exp(a) * jets.exp(-a)
    want = Jet2.constant(1.0, a.order)
    assert _rel_close(one, want, 1e-10)


def test_truncated_and_align():
    a = Jet1([1, 2, 3, 4])
    b = a.truncated(2)
    assert b.order == 2 and np.allclose(b.coeffs, [1, 2, 3])
    with pytest.raises(OrderExceedsTruncation):
        b.truncated(3)
    x, y = align(a, b)
    assert x.order == y.order == 2


def test_immutability():
    a = Jet1([1, 2, 3])
    with pytest.raises(ValueError):
        a.coeffs[0] = 5.0
