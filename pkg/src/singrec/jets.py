"""Exact arithmetic on truncated Taylor expansions in one and two variables.

A jet stores the Taylor coefficients of a scalar quantity around a base
point, truncated at a fixed order.  All operations map operand coefficients
to result coefficients through the standard power-series recurrences, so a
coefficient is exact (up to float rounding) whenever the corresponding
coefficient of the operands is.  Nothing in this package ever differentiates
numerically: every derivative is read off a jet.

``Jet1`` is univariate (coefficients ``a[k]`` of ``t**k``), ``Jet2`` is
bivariate (triangular table ``a[i, j]`` of ``u**i * v**j`` with
``i + j <= order``).  Binary operations insist on equal truncation orders;
use :meth:`truncated` / :func:`align` when mixing jets whose valid order
differs (e.g. after differentiation, which loses one order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DivisionBySingular,
    OrderExceedsTruncation,
    OrderMismatch,
    SqrtOfNonpositive,
)

DEFAULT_ORDER = 9


@dataclass(frozen=True)
class Tolerance:
    """Scale-aware zero test: ``x`` is zero when ``|x/S| <= abs + rel``.

    ``scale`` (``S``) should be the largest coefficient magnitude
    participating in the same series or determinant.  The test is applied
    to the unit-normalized quantity ``x/S``, so the decision is invariant
    under a common rescaling of the data; otherwise a fixed absolute floor
    would flip criteria on germs whose coordinates are merely compressed
    or stretched.
    """

    abs: float = 1e-9
    rel: float = 1e-9

    def threshold(self, scale: float = 1.0) -> float:
        s = abs(scale)
        if s <= 0.0 or not math.isfinite(s):
            s = 1.0
        return (self.abs + self.rel) * s

    def is_zero(self, x: float, scale: float = 1.0) -> bool:
        return abs(x) <= self.threshold(scale)


DEFAULT_TOL = Tolerance()


def _as_array(coeffs, shape) -> np.ndarray:
    arr = np.zeros(shape, dtype=float)
    src = np.asarray(coeffs, dtype=float)
    arr[tuple(slice(0, n) for n in src.shape)] = src
    if not math.isfinite(float(arr.sum())):  # nan/inf poison the sum
        raise ValueError("jet coefficients must be finite")
    arr.setflags(write=False)
    return arr


# cached index tables, keyed by truncation order
_TRI_MASK: dict[int, np.ndarray] = {}
_FLAT_IDX: dict[int, tuple[np.ndarray, int]] = {}


def _tri_mask(order: int) -> np.ndarray:
    mask = _TRI_MASK.get(order)
    if mask is None:
        i, j = np.indices((order + 1, order + 1))
        mask = i + j > order
        mask.setflags(write=False)
        _TRI_MASK[order] = mask
    return mask


def _flat_idx(order: int) -> tuple[np.ndarray, int]:
    """Kronecker flattening of exponent pairs: (i, j) -> i + j * stride.

    The stride exceeds the largest reachable exponent, so 1D convolution of
    the flattened tables reproduces the 2D truncated product exactly.
    """
    cached = _FLAT_IDX.get(order)
    if cached is None:
        stride = 2 * order + 1
        i, j = np.indices((order + 1, order + 1))
        flat = (i + j * stride).ravel()
        flat.setflags(write=False)
        cached = (flat, order * stride + order + 1)
        _FLAT_IDX[order] = cached
    return cached


def _conv2(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    flat, length = _flat_idx(order)
    av = np.zeros(length)
    bv = np.zeros(length)
    av[flat] = a.ravel()
    bv[flat] = b.ravel()
    full = np.convolve(av, bv)
    out = full[flat].reshape(order + 1, order + 1)
    out[_tri_mask(order)] = 0.0
    return out


@dataclass(frozen=True)
class Jet1:
    """Univariate jet: sum of ``coeffs[k] * t**k`` for ``k <= order``."""

    coeffs: np.ndarray
    order: int = field(default=-1)

    def __post_init__(self):
        order = self.order if self.order >= 0 else len(self.coeffs) - 1
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", _as_array(self.coeffs, (order + 1,)))

    # -- constructors ----------------------------------------------------

    @staticmethod
    def constant(value: float, order: int = DEFAULT_ORDER) -> "Jet1":
        c = np.zeros(order + 1)
        c[0] = value
        return Jet1(c)

    @staticmethod
    def variable(value: float = 0.0, order: int = DEFAULT_ORDER) -> "Jet1":
        """Jet of ``t`` itself around the point ``value``."""
        c = np.zeros(order + 1)
        c[0] = value
        if order >= 1:
            c[1] = 1.0
        return Jet1(c)

    # -- structure ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return 1

    def truncated(self, order: int) -> "Jet1":
        if order > self.order:
            raise OrderExceedsTruncation(
                f"cannot extend a jet of order {self.order} to order {order}"
            )
        return Jet1(self.coeffs[: order + 1])

    def scaled(self, s: float) -> "Jet1":
        return Jet1(self.coeffs * s)

    def diff(self) -> "Jet1":
        """d/dt; the result is one order shorter."""
        if self.order == 0:
            raise OrderExceedsTruncation("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1)
        return Jet1(self.coeffs[1:] * k)

    def integrate(self, const: float = 0.0) -> "Jet1":
        c = np.empty(self.order + 2)
        c[0] = const
        c[1:] = self.coeffs / np.arange(1, self.order + 2)
        return Jet1(c)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    # -- ring operations -------------------------------------------------

    def _coerce(self, other) -> "Jet1":
        if isinstance(other, Jet1):
            if other.order != self.order:
                raise OrderMismatch(
                    f"jet orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, Jet2):
            raise OrderMismatch("cannot mix univariate and bivariate jets")
        return Jet1.constant(float(other), self.order)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            c = self.coeffs.copy()
            c[0] += other
            return Jet1(c)
        other = self._coerce(other)
        return Jet1(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Jet1(-self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return self + (-other)
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Jet1(self.coeffs * other)
        other = self._coerce(other)
        full = np.convolve(self.coeffs, other.coeffs)
        return Jet1(full[: self.order + 1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Jet1(self.coeffs / other)
        return _divide(self, self._coerce(other))

    def __rtruediv__(self, other):
        return _divide(self._coerce(other), self)

    def __pow__(self, n: int):
        return _int_pow(self, n)

    # -- extraction --------------------------------------------------------

    def value(self) -> float:
        return float(self.coeffs[0])

    def nilpotent(self) -> "Jet1":
        c = self.coeffs.copy()
        c[0] = 0.0
        return Jet1(c)


@dataclass(frozen=True)
class Jet2:
    """Bivariate jet: sum of ``coeffs[i, j] * u**i * v**j`` for ``i + j <= order``.

    The coefficient table is square for convenience; entries with
    ``i + j > order`` are kept at zero.
    """

    coeffs: np.ndarray
    order: int = field(default=-1)

    def __post_init__(self):
        order = self.order if self.order >= 0 else len(self.coeffs) - 1
        object.__setattr__(self, "order", order)
        arr = np.zeros((order + 1, order + 1))
        src = np.asarray(self.coeffs, dtype=float)[: order + 1, : order + 1]
        arr[: src.shape[0], : src.shape[1]] = src
        arr[_tri_mask(order)] = 0.0
        if not math.isfinite(float(arr.sum())):
            raise ValueError("jet coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def constant(value: float, order: int = DEFAULT_ORDER) -> "Jet2":
        c = np.zeros((order + 1, order + 1))
        c[0, 0] = value
        return Jet2(c)

    @staticmethod
    def variable(axis: int, value: float = 0.0, order: int = DEFAULT_ORDER) -> "Jet2":
        """Jet of the coordinate ``u`` (axis 0) or ``v`` (axis 1) around ``value``."""
        c = np.zeros((order + 1, order + 1))
        c[0, 0] = value
        if order >= 1:
            c[(1, 0) if axis == 0 else (0, 1)] = 1.0
        return Jet2(c)

    # -- structure ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return 2

    def truncated(self, order: int) -> "Jet2":
        if order > self.order:
            raise OrderExceedsTruncation(
                f"cannot extend a jet of order {self.order} to order {order}"
            )
        return Jet2(self.coeffs[: order + 1, : order + 1])

    def scaled(self, s: float) -> "Jet2":
        return Jet2(self.coeffs * s)

    def diff(self, axis: int) -> "Jet2":
        """Partial derivative along ``axis``; one order shorter."""
        if self.order == 0:
            raise OrderExceedsTruncation("cannot differentiate an order-0 jet")
        n = self.order
        k = np.arange(1, n + 1)
        if axis == 0:
            c = self.coeffs[1:, :n] * k[:, None]
        else:
            c = self.coeffs[:n, 1:] * k[None, :]
        return Jet2(c)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    # -- ring operations -------------------------------------------------

    def _coerce(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            if other.order != self.order:
                raise OrderMismatch(
                    f"jet orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, Jet1):
            raise OrderMismatch("cannot mix univariate and bivariate jets")
        return Jet2.constant(float(other), self.order)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            c = self.coeffs.copy()
            c[0, 0] += other
            return Jet2(c, self.order)
        other = self._coerce(other)
        return Jet2(self.coeffs + other.coeffs, self.order)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.coeffs, self.order)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return self + (-other)
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Jet2(self.coeffs * other, self.order)
        other = self._coerce(other)
        return Jet2(_conv2(self.coeffs, other.coeffs, self.order), self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Jet2(self.coeffs / other, self.order)
        return _divide(self, self._coerce(other))

    def __rtruediv__(self, other):
        return _divide(self._coerce(other), self)

    def __pow__(self, n: int):
        return _int_pow(self, n)

    # -- extraction --------------------------------------------------------

    def value(self) -> float:
        return float(self.coeffs[0, 0])

    def nilpotent(self) -> "Jet2":
        c = self.coeffs.copy()
        c[0, 0] = 0.0
        return Jet2(c, self.order)


Jet = Jet1 | Jet2


@dataclass(frozen=True)
class JetPath:
    """A source-plane curve ``t -> (u(t), v(t))`` through the base point.

    Both components must have an exactly zero constant term, so that
    substitution into a bivariate jet is well defined at the truncation.
    """

    u: Jet1
    v: Jet1

    def __post_init__(self):
        if self.u.order != self.v.order:
            raise OrderMismatch("path components must share one order")
        if self.u.coeffs[0] != 0.0 or self.v.coeffs[0] != 0.0:
            raise ValueError("path components must vanish at t=0")

    @property
    def order(self) -> int:
        return self.u.order

    def component(self, axis: int) -> Jet1:
        return self.u if axis == 0 else self.v

    def velocity(self) -> np.ndarray:
        return np.array([self.u.coeffs[1], self.v.coeffs[1]])


# ---------------------------------------------------------------------------
# analytic functions via Horner evaluation on the nilpotent part
# ---------------------------------------------------------------------------


def _one(like: Jet, value: float = 1.0) -> Jet:
    if isinstance(like, Jet1):
        return Jet1.constant(value, like.order)
    return Jet2.constant(value, like.order)


def _horner(series: list[float], h: Jet) -> Jet:
    """Evaluate ``sum series[k] * h**k`` where ``h`` has zero constant term."""
    acc = _one(h, series[-1])
    for c in reversed(series[:-1]):
        acc = acc * h + c
    return acc


def _analytic(jet: Jet, taylor_at) -> Jet:
    """Apply an analytic function given its Taylor coefficients at ``jet.value()``."""
    series = taylor_at(jet.value(), jet.order)
    return _horner(series, jet.nilpotent())


def _check_unit(jet: Jet) -> float:
    c0 = jet.value()
    if DEFAULT_TOL.is_zero(c0, jet.max_abs()):
        raise DivisionBySingular(
            f"denominator constant term {c0!r} is within zero tolerance"
        )
    return c0


def _divide(num: Jet, den: Jet) -> Jet:
    """Long division: fill the quotient degree by degree from num - q*den.

    Numerically preferable to multiplying by a reciprocal series: the big
    coefficients of 1/den are never materialized, so quotients of
    well-scaled jets stay accurate to rounding.
    """
    d0 = _check_unit(den)
    if isinstance(num, Jet1):
        n = num.order
        q = np.zeros(n + 1)
        dc = den.coeffs
        for k in range(n + 1):
            residual = num.coeffs[k] - float(np.dot(q[:k], dc[k:0:-1]))
            q[k] = residual / d0
        return Jet1(q)
    n = num.order
    q = np.zeros((n + 1, n + 1))
    for d in range(n + 1):
        r = num.coeffs - _conv2(q, den.coeffs, n)
        for i in range(d + 1):
            q[i, d - i] = r[i, d - i] / d0
    return Jet2(q, n)


def _reciprocal(jet: Jet) -> Jet:
    return _divide(_one(jet), jet)


def _int_pow(jet: Jet, n) -> Jet:
    if not isinstance(n, int):
        raise TypeError("jet exponents must be integers")
    if n < 0:
        return _reciprocal(_int_pow(jet, -n))
    acc = _one(jet)
    base = jet
    while n:
        if n & 1:
            acc = acc * base
        n >>= 1
        if n:
            base = base * base
    return acc


def sqrt(x):
    if not isinstance(x, (Jet1, Jet2)):
        return math.sqrt(x)
    c0 = x.value()
    if c0 <= DEFAULT_TOL.threshold(x.max_abs()):
        raise SqrtOfNonpositive(f"sqrt of jet with constant term {c0!r}")
    # recurrence from s*s = x, degree by degree (cancels better than the
    # binomial Horner form for poorly scaled inputs)
    s0 = math.sqrt(c0)
    if isinstance(x, Jet1):
        n = x.order
        s = np.zeros(n + 1)
        s[0] = s0
        for k in range(1, n + 1):
            s[k] = (x.coeffs[k] - float(np.dot(s[1:k], s[k - 1 : 0 : -1]))) / (2 * s0)
        return Jet1(s)
    n = x.order
    s = np.zeros((n + 1, n + 1))
    s[0, 0] = s0
    for d in range(1, n + 1):
        r = x.coeffs - _conv2(s, s, n)
        for i in range(d + 1):
            s[i, d - i] = r[i, d - i] / (2 * s0)
    return Jet2(s, n)


def exp(x):
    if not isinstance(x, (Jet1, Jet2)):
        return math.exp(x)
    return _analytic(
        x, lambda a, n: [math.exp(a) / math.factorial(k) for k in range(n + 1)]
    )


def sin(x):
    if not isinstance(x, (Jet1, Jet2)):
        return math.sin(x)
    cyc = (math.sin, math.cos, lambda a: -math.sin(a), lambda a: -math.cos(a))
    return _analytic(
        x, lambda a, n: [cyc[k % 4](a) / math.factorial(k) for k in range(n + 1)]
    )


def cos(x):
    if not isinstance(x, (Jet1, Jet2)):
        return math.cos(x)
    cyc = (math.cos, lambda a: -math.sin(a), lambda a: -math.cos(a), math.sin)
    return _analytic(
        x, lambda a, n: [cyc[k % 4](a) / math.factorial(k) for k in range(n + 1)]
    )


# ---------------------------------------------------------------------------
# composition and derivative extraction
# ---------------------------------------------------------------------------


def compose(field: Jet2, path: JetPath) -> Jet1:
    """Substitute a source curve into a bivariate jet.

    Exact through ``min(field.order, path.order)``: higher field terms only
    feed higher powers of t, higher path terms are unknown anyway.
    """
    n = min(field.order, path.order)
    upow = np.zeros((n + 1, n + 1))
    vpow = np.zeros((n + 1, n + 1))
    upow[0, 0] = vpow[0, 0] = 1.0
    ucoef = path.u.coeffs[: n + 1]
    vcoef = path.v.coeffs[: n + 1]
    for i in range(1, n + 1):
        upow[i] = np.convolve(upow[i - 1], ucoef)[: n + 1]
        vpow[i] = np.convolve(vpow[i - 1], vcoef)[: n + 1]
    rows = field.coeffs[: n + 1, : n + 1].T @ upow  # rows[j] = sum_i c[i,j] u^i
    out = np.zeros(n + 1)
    for j in range(n + 1):
        out += np.convolve(rows[j], vpow[j])[: n + 1]
    return Jet1(out)


def compose1(outer: Jet1, inner: Jet1) -> Jet1:
    """Univariate substitution ``outer(inner(t))``; ``inner`` must vanish at 0."""
    if inner.coeffs[0] != 0.0:
        raise ValueError("inner jet must have zero constant term")
    n = min(outer.order, inner.order)
    return _horner(list(outer.coeffs[: n + 1]), inner.truncated(n))


def compose2(field: Jet2, u_sub: Jet2, v_sub: Jet2) -> Jet2:
    """Substitute a plane map ``(u, v) -> (u_sub, v_sub)`` into a bivariate jet.

    Both substituted components must vanish at the origin.
    """
    if u_sub.value() != 0.0 or v_sub.value() != 0.0:
        raise ValueError("substituted components must vanish at the base point")
    n = min(field.order, u_sub.order, v_sub.order)
    eye = np.zeros((n + 1, n + 1))
    eye[0, 0] = 1.0
    ucoef = u_sub.coeffs[: n + 1, : n + 1]
    vcoef = v_sub.coeffs[: n + 1, : n + 1]
    upow = [eye]
    vpow = [eye]
    for _ in range(n):
        upow.append(_conv2(upow[-1], ucoef, n))
        vpow.append(_conv2(vpow[-1], vcoef, n))
    fc = field.coeffs[: n + 1, : n + 1]
    out = np.zeros((n + 1, n + 1))
    for j in range(n + 1):
        row = np.tensordot(fc[:, j], upow, axes=(0, 0))
        out += _conv2(row, vpow[j], n)
    return Jet2(out, n)


def extract(jet: Jet, *orders: int) -> float:
    """Derivative value at the base point: coefficient times the factorials.

    ``extract(j, k)`` is the k-th derivative of a univariate jet,
    ``extract(J, i, j)`` the mixed partial of a bivariate one.
    """
    if isinstance(jet, Jet1):
        if len(orders) != 1:
            raise ValueError("univariate jets take one derivative order")
        (k,) = orders
        if k > jet.order:
            raise OrderExceedsTruncation(
                f"derivative order {k} exceeds truncation {jet.order}"
            )
        return float(jet.coeffs[k]) * math.factorial(k)
    if len(orders) != 2:
        raise ValueError("bivariate jets take two derivative orders")
    i, j = orders
    if i + j > jet.order:
        raise OrderExceedsTruncation(
            f"derivative order {i + j} exceeds truncation {jet.order}"
        )
    return float(jet.coeffs[i, j]) * math.factorial(i) * math.factorial(j)


def align(*jets):
    """Truncate all jets to their common (minimum) order."""
    n = min(j.order for j in jets)
    return tuple(j.truncated(n) for j in jets)


def det3(cols) -> Jet:
    """Determinant of three jet 3-vectors given as columns."""
    flat = align(*(entry for col in cols for entry in col))
    (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = flat[0:3], flat[3:6], flat[6:9]
    return (
        a0 * (b1 * c2 - b2 * c1)
        - a1 * (b0 * c2 - b2 * c0)
        + a2 * (b0 * c1 - b1 * c0)
    )


def dot3(a, b) -> Jet:
    flat = align(*a, *b)
    return flat[0] * flat[3] + flat[1] * flat[4] + flat[2] * flat[5]


def cross3(a, b):
    a0, a1, a2, b0, b1, b2 = align(*a, *b)
    return (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)


def vanishing_order(
    series: Jet1,
    tol: Tolerance = DEFAULT_TOL,
    max_k: int | None = None,
    scale: float | None = None,
) -> tuple[int, float]:
    """First index whose coefficient escapes the scale-aware zero band.

    Returns ``(k, leading)`` with ``leading = k! * coeffs[k]`` (the k-th
    derivative at 0).  ``scale`` lets the caller supply the magnitude of
    the computation that produced the series (so that pure cancellation
    noise is not mistaken for a leading coefficient); the series' own
    largest coefficient is always included.  Raises
    :class:`OrderExceedsTruncation` when every inspected coefficient is
    inside the band.
    """
    s = max(series.max_abs(), scale if scale is not None else 0.0)
    limit = series.order if max_k is None else min(series.order, max_k)
    for k in range(limit + 1):
        if not tol.is_zero(float(series.coeffs[k]), s):
            return k, float(series.coeffs[k]) * math.factorial(k)
    raise OrderExceedsTruncation(
        f"series vanishes through order {limit} at the working truncation"
    )
