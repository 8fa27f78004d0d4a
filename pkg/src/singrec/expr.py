"""Calculator-style expression language for maps and curves.

Grammar (whitespace insignificant, implicit multiplication rejected)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' ['-'] integer)?
    atom   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' atom

``^`` binds tighter than unary minus, which binds tighter than ``*``/``/``;
exponents are integer literals.  Known functions: sqrt, sin, cos, exp.
A top-level parenthesized comma list of three expressions denotes a map or
curve germ, depending on the declared variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import jets
from .errors import ArityError, EvalError, ParseError, SingrecError, UnknownIdentifier

FUNCTIONS = {
    "sqrt": (jets.sqrt, math.sqrt),
    "sin": (jets.sin, math.sin),
    "cos": (jets.cos, math.cos),
    "exp": (jets.exp, math.exp),
}


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Expr:
    pos: int = field(default=0, kw_only=True, compare=False)


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str  # one of + - * /
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


# --- tokenizer -------------------------------------------------------------

_PUNCT = set("+-*/^(),")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Returns (kind, text, pos) triples; kinds: num, ident, punct, end."""
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            out.append(("punct", c, i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            try:
                float(text[i:j])
            except ValueError:
                raise ParseError(f"bad number literal {text[i:j]!r}", i) from None
            out.append(("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    out.append(("end", "", n))
    return out


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.variables = variables
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, text: str):
        kind, tok, pos = self.next()
        if tok != text:
            raise ParseError(f"expected {text!r}, found {tok or 'end of input'!r}", pos)

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, pos = self.next()
            node = BinOp(op, node, self.term(), pos=pos)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.next()
            node = BinOp(op, node, self.factor(), pos=pos)
        return node

    def factor(self) -> Expr:
        # '^' binds tighter than unary minus: -a^2 is -(a^2).
        if self.peek()[1] == "-":
            _, _, pos = self.next()
            return Neg(self.factor(), pos=pos)
        node = self.atom()
        if self.peek()[1] == "^":
            _, _, pos = self.next()
            sign = 1
            if self.peek()[1] == "-":
                self.next()
                sign = -1
            kind, tok, p = self.next()
            if kind != "num" or not tok.isdigit():
                raise ParseError("exponent must be an integer literal", p)
            node = Pow(node, sign * int(tok), pos=pos)
        return node

    def atom(self) -> Expr:
        kind, tok, pos = self.next()
        if kind == "num":
            return Num(float(tok), pos=pos)
        if kind == "ident":
            if self.peek()[1] == "(":
                if tok not in FUNCTIONS:
                    raise UnknownIdentifier(f"unknown function {tok!r}", pos)
                self.next()
                arg = self.expr()
                self.expect(")")
                return Call(tok, arg, pos=pos)
            if tok not in self.variables:
                raise UnknownIdentifier(
                    f"unknown identifier {tok!r} (declared: {', '.join(self.variables)})",
                    pos,
                )
            return Var(tok, pos=pos)
        if tok == "(":
            node = self.expr()
            if self.peek()[1] == ",":
                raise ParseError("component tuples are only allowed at top level", self.peek()[2])
            self.expect(")")
            return node
        raise ParseError(f"unexpected {tok or 'end of input'!r}", pos)

    def top(self) -> tuple[Expr, ...]:
        """Either a single expression or a parenthesized comma list."""
        if self.peek()[1] == "(":
            # Look for a comma at depth 1 to distinguish tuple from grouping.
            depth = 0
            is_tuple = False
            for kind, tok, _ in self.tokens[self.k:]:
                if tok == "(":
                    depth += 1
                elif tok == ")":
                    depth -= 1
                    if depth == 0:
                        break
                elif tok == "," and depth == 1:
                    is_tuple = True
                    break
            if is_tuple:
                self.next()
                items = [self.expr()]
                while self.peek()[1] == ",":
                    self.next()
                    items.append(self.expr())
                self.expect(")")
                self.finish()
                return tuple(items)
        node = self.expr()
        self.finish()
        return (node,)

    def finish(self):
        kind, tok, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {tok!r}", pos)


def parse_scalar(text: str, variables: tuple[str, ...]) -> Expr:
    if not text.strip():
        raise ParseError("empty expression", 0)
    items = _Parser(text, variables).top()
    if len(items) != 1:
        raise ArityError(f"expected a single expression, found {len(items)} components")
    return items[0]


def parse_components(text: str, variables: tuple[str, ...], arity: int = 3) -> tuple[Expr, ...]:
    if not text.strip():
        raise ParseError("empty expression", 0)
    items = _Parser(text, variables).top()
    if len(items) != arity:
        raise ArityError(f"expected {arity} components, found {len(items)}")
    return items


# --- evaluation ------------------------------------------------------------


def evaluate(e: Expr, env: dict):
    """Evaluate over any ring with +,-,*,/,** — floats or jets.

    The order-0 coefficient of a jet evaluation equals pointwise evaluation
    at the base point by construction.
    """
    if isinstance(e, Num):
        sample = next(iter(env.values()), None)
        if isinstance(sample, (jets.Jet1, jets.Jet2)):
            return sample * 0.0 + e.value
        return e.value
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Neg):
        return -evaluate(e.operand, env)
    if isinstance(e, Pow):
        base = evaluate(e.base, env)
        try:
            if isinstance(base, (jets.Jet1, jets.Jet2)):
                return base ** e.exponent
            return float(base) ** e.exponent
        except SingrecError as exc:
            raise EvalError(str(exc), e.pos, exc) from exc
    if isinstance(e, BinOp):
        a = evaluate(e.lhs, env)
        b = evaluate(e.rhs, env)
        try:
            if e.op == "+":
                return a + b
            if e.op == "-":
                return a - b
            if e.op == "*":
                return a * b
            return a / b
        except SingrecError as exc:
            raise EvalError(str(exc), e.pos, exc) from exc
    if isinstance(e, Call):
        arg = evaluate(e.arg, env)
        jet_fn, float_fn = FUNCTIONS[e.func]
        try:
            if isinstance(arg, (jets.Jet1, jets.Jet2)):
                return jet_fn(arg)
            return float_fn(arg)
        except SingrecError as exc:
            raise EvalError(str(exc), e.pos, exc) from exc
    raise TypeError(f"not an expression node: {e!r}")


# --- symbolic helpers -------------------------------------------------------


def differentiate(e: Expr, var: str) -> Expr:
    """Formal derivative; no simplification beyond dropping obvious zeros."""
    if isinstance(e, Num):
        return Num(0.0)
    if isinstance(e, Var):
        return Num(1.0) if e.name == var else Num(0.0)
    if isinstance(e, Neg):
        return Neg(differentiate(e.operand, var))
    if isinstance(e, Pow):
        d = differentiate(e.base, var)
        if e.exponent == 0:
            return Num(0.0)
        power = Pow(e.base, e.exponent - 1) if e.exponent != 1 else e.base
        return BinOp("*", BinOp("*", Num(float(e.exponent)), power), d)
    if isinstance(e, BinOp):
        da = differentiate(e.lhs, var)
        db = differentiate(e.rhs, var)
        if e.op in "+-":
            return BinOp(e.op, da, db)
        if e.op == "*":
            return BinOp("+", BinOp("*", da, e.rhs), BinOp("*", e.lhs, db))
        num = BinOp("-", BinOp("*", da, e.rhs), BinOp("*", e.lhs, db))
        return BinOp("/", num, Pow(e.rhs, 2))
    if isinstance(e, Call):
        d = differentiate(e.arg, var)
        if e.func == "sqrt":
            outer = BinOp("/", Num(0.5), Call("sqrt", e.arg))
        elif e.func == "sin":
            outer = Call("cos", e.arg)
        elif e.func == "cos":
            outer = Neg(Call("sin", e.arg))
        else:  # exp
            outer = Call("exp", e.arg)
        return BinOp("*", outer, d)
    raise TypeError(f"not an expression node: {e!r}")


def substitute(e: Expr, mapping: dict[str, Expr]) -> Expr:
    """Replace variables by expressions (used to compose maps symbolically)."""
    if isinstance(e, Num):
        return e
    if isinstance(e, Var):
        return mapping.get(e.name, e)
    if isinstance(e, Neg):
        return Neg(substitute(e.operand, mapping))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, mapping), e.exponent)
    if isinstance(e, BinOp):
        return BinOp(e.op, substitute(e.lhs, mapping), substitute(e.rhs, mapping))
    if isinstance(e, Call):
        return Call(e.func, substitute(e.arg, mapping))
    raise TypeError(f"not an expression node: {e!r}")


# --- printing ---------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def to_str(e: Expr) -> str:
    """Canonical rendering; parse(to_str(e)) prints identically."""

    def render(node: Expr, parent_prec: int) -> str:
        if isinstance(node, Num):
            v = node.value
            return repr(int(v)) if v == int(v) and abs(v) < 1e16 else repr(v)
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Call):
            return f"{node.func}({render(node.arg, 0)})"
        if isinstance(node, Neg):
            inner = render(node.operand, _PREC["neg"])
            text = f"-{inner}"
            return f"({text})" if parent_prec > _PREC["neg"] else text
        if isinstance(node, Pow):
            base = render(node.base, _PREC["^"] + 1)
            text = f"{base}^{node.exponent}"
            return f"({text})" if parent_prec > _PREC["^"] else text
        if isinstance(node, BinOp):
            prec = _PREC[node.op]
            lhs = render(node.lhs, prec)
            rhs = render(node.rhs, prec + 1)  # left associative
            text = f"{lhs} {node.op} {rhs}" if prec == 1 else f"{lhs}{node.op}{rhs}"
            return f"({text})" if prec < parent_prec else text
        raise TypeError(f"not an expression node: {node!r}")

    return render(e, 0)


# --- germ containers ---------------------------------------------------------


@dataclass(frozen=True)
class MapGerm:
    """Three components in two source variables plus a base point."""

    components: tuple[Expr, Expr, Expr]
    base_point: tuple[float, float] = (0.0, 0.0)
    variables: tuple[str, str] = ("u", "v")

    def jets(self, order: int = jets.DEFAULT_ORDER) -> tuple[jets.Jet2, ...]:
        """Local Taylor tables of the components around the base point."""
        env = {
            self.variables[0]: jets.Jet2.variable(0, self.base_point[0], order),
            self.variables[1]: jets.Jet2.variable(1, self.base_point[1], order),
        }
        return tuple(evaluate(c, env) for c in self.components)

    def __call__(self, u: float, v: float) -> tuple[float, float, float]:
        env = {self.variables[0]: float(u), self.variables[1]: float(v)}
        return tuple(float(evaluate(c, env)) for c in self.components)

    def __str__(self):
        return "(" + ", ".join(to_str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class CurveGerm:
    """Three components in one parameter plus a base point."""

    components: tuple[Expr, Expr, Expr]
    base_point: float = 0.0
    variable: str = "t"

    def jets(self, order: int = jets.DEFAULT_ORDER) -> tuple[jets.Jet1, ...]:
        env = {self.variable: jets.Jet1.variable(self.base_point, order)}
        return tuple(evaluate(c, env) for c in self.components)

    def __call__(self, t: float) -> tuple[float, float, float]:
        env = {self.variable: float(t)}
        return tuple(float(evaluate(c, env)) for c in self.components)

    def __str__(self):
        return "(" + ", ".join(to_str(c) for c in self.components) + ")"


def parse_map(
    text: str,
    variables: tuple[str, str] = ("u", "v"),
    base_point: tuple[float, float] = (0.0, 0.0),
) -> MapGerm:
    comps = parse_components(text, variables)
    return MapGerm(comps, tuple(float(x) for x in base_point), variables)


def parse_curve(text: str, variable: str = "t", base_point: float = 0.0) -> CurveGerm:
    comps = parse_components(text, (variable,))
    return CurveGerm(comps, float(base_point), variable)
