"""Parser, printer, and evaluator tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singrec import expr
from singrec.errors import ArityError, EvalError, ParseError, UnknownIdentifier
from singrec.expr import (
    BinOp,
    Call,
    MapGerm,
    Neg,
    Num,
    Pow,
    Var,
    differentiate,
    evaluate,
    parse_curve,
    parse_map,
    parse_scalar,
    to_str,
)
from singrec.jets import Jet1, Jet2


def test_parse_map_germ():
    m = parse_map("(u, v^2, v^3*(u^2 + v^2))")
    assert isinstance(m, MapGerm)
    assert len(m.components) == 3
    assert str(m) == "(u, v^2, v^3*(u^2 + v^2))"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_map("(u, v^2")  # unbalanced
    with pytest.raises(ArityError):
        parse_map("(u, v)")
    with pytest.raises(ArityError):
        parse_scalar("(u, v, 0)", ("u", "v"))
    with pytest.raises(UnknownIdentifier):
        parse_scalar("w + 1", ("u", "v"))
    with pytest.raises(UnknownIdentifier):
        parse_scalar("tan(u)", ("u", "v"))
    with pytest.raises(ParseError):
        parse_scalar("2u", ("u", "v"))  # implicit multiplication
    with pytest.raises(ParseError):
        parse_scalar("u^v", ("u", "v"))  # non-integer exponent
    with pytest.raises(ParseError):
        parse_scalar("", ("u", "v"))
    with pytest.raises(ParseError):
        parse_scalar("(u, (1, 2, 3), v)", ("u", "v"))  # nested tuple


def test_scalar_and_positions():
    e = parse_scalar("sqrt(1+u) - 1", ("u", "v"))
    assert isinstance(e, BinOp) and isinstance(e.lhs, Call)
    with pytest.raises(UnknownIdentifier) as info:
        parse_scalar("u + foo(v)", ("u", "v"))
    assert info.value.pos == 4


def test_precedence_and_unary_minus():
    # ^ binds tighter than unary minus
    env = {"u": 2.0, "v": 0.0}
    assert evaluate(parse_scalar("-u^2", ("u", "v")), env) == -4.0
    assert evaluate(parse_scalar("(-u)^2", ("u", "v")), env) == 4.0
    assert evaluate(parse_scalar("2^-1", ("u", "v")), env) == 0.5
    assert evaluate(parse_scalar("2 - -3", ("u", "v")), env) == 5.0
    assert evaluate(parse_scalar("2*3 + 4", ("u", "v")), env) == 10.0
    assert evaluate(parse_scalar("1 - 2 - 3", ("u", "v")), env) == -4.0
    assert evaluate(parse_scalar("8/4/2", ("u", "v")), env) == 1.0


def test_eval_jets_examples():
    t = Jet1.variable(0.0, 3)
    got = evaluate(parse_scalar("u*v", ("u", "v")), {"u": t, "v": t})
    assert np.allclose(got.coeffs, [0, 0, 1, 0])
    got = evaluate(parse_scalar("sin(u)", ("u", "v")), {"u": t, "v": t})
    assert np.allclose(got.coeffs, [0, 1, 0, -1 / 6])
    with pytest.raises(EvalError) as info:
        evaluate(parse_scalar("1/u", ("u", "v")), {"u": t, "v": t})
    assert info.value.pos == 1


def test_curve_germ_and_base_point():
    c = parse_curve("(t^2, t^5, 0)")
    jets = c.jets(6)
    assert np.allclose(jets[0].coeffs, [0, 0, 1, 0, 0, 0, 0])
    assert c(2.0) == (4.0, 32.0, 0.0)
    shifted = parse_map("(u, v^2, v^3)", base_point=(1.0, 0.5))
    j = shifted.jets(4)
    # order-0 coefficient equals pointwise evaluation at the base point
    assert j[1].value() == pytest.approx(0.25)
    assert j[2].value() == pytest.approx(0.125)


# --- random ASTs: printing fixed point, jet/float agreement ------------------


def exprs(variables=("u", "v"), max_depth=4):
    leaves = st.one_of(
        st.floats(min_value=0, max_value=9, allow_nan=False).map(
            lambda v: Num(float(f"{v:.3g}"))
        ),
        st.sampled_from([Var(v) for v in variables]),
    )

    def extend(children):
        return st.one_of(
            st.tuples(st.sampled_from("+-*"), children, children).map(
                lambda t: BinOp(t[0], t[1], t[2])
            ),
            children.map(Neg),
            st.tuples(children, st.integers(0, 4)).map(lambda t: Pow(t[0], t[1])),
            st.tuples(st.sampled_from(["sin", "cos", "exp"]), children).map(
                lambda t: Call(t[0], t[1])
            ),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@settings(max_examples=150, deadline=None)
@given(e=exprs())
def test_print_parse_print_fixed_point(e):
    text = to_str(e)
    reparsed = parse_scalar(text, ("u", "v"))
    assert to_str(reparsed) == text


@settings(max_examples=100, deadline=None)
@given(
    e=exprs(),
    u0=st.floats(min_value=-1.5, max_value=1.5, allow_nan=False),
    v0=st.floats(min_value=-1.5, max_value=1.5, allow_nan=False),
)
def test_jet_constant_term_matches_pointwise_eval(e, u0, v0):
    env_f = {"u": u0, "v": v0}
    try:
        want = float(evaluate(e, env_f))
    except OverflowError:
        return
    if not math.isfinite(want) or abs(want) > 1e12:
        return
    env_j = {"u": Jet2.variable(0, u0, 4), "v": Jet2.variable(1, v0, 4)}
    got = evaluate(e, env_j).value()
    assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_differentiate_against_jets():
    # d/du of the expression, evaluated, must match the jet coefficient
    text = "sqrt(1 + u^2 + v^2) * sin(u) - exp(v)/(2 + u)"
    e = parse_scalar(text, ("u", "v"))
    du = differentiate(e, "u")
    env = {"u": Jet2.variable(0, 0.3, 5), "v": Jet2.variable(1, -0.2, 5)}
    full = evaluate(e, env)
    want = float(full.coeffs[1, 0])
    got = evaluate(du, env).value()
    assert got == pytest.approx(want, rel=1e-12)
