"""Exact truncated formal power series over the rationals.

Three value types, all immutable:

* ``Poly``: dense univariate polynomial in x with ``Fraction`` coefficients,
  no trailing zeros (the zero polynomial is the empty tuple, degree -1).
* ``PolySeries``: power series in t, truncated at a fixed order N, whose
  N+1 coefficients are ``Poly`` values.  Coefficients are plain Taylor
  coefficients c_n; any n! normalization is applied by callers when they
  extract polynomial families.
* ``BiSeries``: power series in (t, u) truncated at orders (Nt, Nu), with
  scalar rational coefficients on the full (Nt+1) x (Nu+1) grid.

Arithmetic truncates to the smaller operand order, so results never claim
more precision than their inputs.  Division cancels the denominator
valuation and loses exactly that many orders.  All numbers stay
``fractions.Fraction``; nothing here ever rounds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    CompositionError,
    DivisionByNonUnit,
    GeomError,
    ValuationError,
)

Rational = Fraction

_Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _fr(value: _Scalar) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class Poly:
    """Dense polynomial in x over Fraction, normalized (no trailing zeros)."""

    __slots__ = ("coeffs",)

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[_Scalar] = ()):
        cs = [_fr(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, value: _Scalar) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff: _Scalar = 1) -> "Poly":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_scalar(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else _ZERO

    def coefficient(self, degree: int) -> Fraction:
        if 0 <= degree < len(self.coeffs):
            return self.coeffs[degree]
        return _ZERO

    def evaluate(self, point: _Scalar) -> Fraction:
        """Horner evaluation at a rational point."""
        point = _fr(point)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def substitute(self, inner: "Poly") -> "Poly":
        """Polynomial composition self(inner(x))."""
        acc = _P_ZERO
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.constant(c)
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __mul__(self, other: Union["Poly", _Scalar]) -> "Poly":
        if not isinstance(other, Poly):
            f = _fr(other)
            if f == 0:
                return _P_ZERO
            return Poly(c * f for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _P_ZERO
        if len(a) == 1:
            return other * a[0]
        if len(b) == 1:
            return self * b[0]
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(out)

    def __rmul__(self, other: _Scalar) -> "Poly":
        return self.__mul__(other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"


_P_ZERO = Poly()
_P_ONE = Poly((1,))


def _as_poly(value: Union[Poly, _Scalar]) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.constant(value)


class PolySeries:
    """Power series sum_{n<=order} c_n t^n with Poly coefficients c_n."""

    __slots__ = ("order", "coeffs")

    order: int
    coeffs: tuple[Poly, ...]

    def __init__(self, order: int, coeffs: Iterable[Union[Poly, _Scalar]] = ()):
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = [_as_poly(c) for c in coeffs]
        if len(cs) > order + 1:
            raise ValueError("more coefficients than order allows")
        cs.extend([_P_ZERO] * (order + 1 - len(cs)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PolySeries is immutable")

    @classmethod
    def zero(cls, order: int) -> "PolySeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "PolySeries":
        return cls(order, (_P_ONE,))

    @classmethod
    def from_scalars(cls, values: Iterable[_Scalar], order: int) -> "PolySeries":
        return cls(order, (Poly.constant(v) for v in values))

    def coefficient(self, n: int) -> Poly:
        return self.coeffs[n] if 0 <= n <= self.order else _P_ZERO

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if all zero."""
        for n, c in enumerate(self.coeffs):
            if not c.is_zero:
                return n
        return None

    def truncate(self, order: int) -> "PolySeries":
        if order >= self.order:
            return self
        return PolySeries(order, self.coeffs[: order + 1])

    def is_scalar_series(self) -> bool:
        return all(c.is_scalar for c in self.coeffs)

    def __add__(self, other: "PolySeries") -> "PolySeries":
        return ps_add(self, other)

    def __sub__(self, other: "PolySeries") -> "PolySeries":
        return ps_add(self, -other)

    def __neg__(self) -> "PolySeries":
        return PolySeries(self.order, (-c for c in self.coeffs))

    def __mul__(self, other: "PolySeries") -> "PolySeries":
        return ps_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolySeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"PolySeries(order={self.order}, coeffs={list(self.coeffs)!r})"


def ps_add(a: PolySeries, b: PolySeries) -> PolySeries:
    n = min(a.order, b.order)
    return PolySeries(n, (a.coeffs[i] + b.coeffs[i] for i in range(n + 1)))


def ps_scale(a: PolySeries, factor: Union[Poly, _Scalar]) -> PolySeries:
    factor = _as_poly(factor)
    return PolySeries(a.order, (c * factor for c in a.coeffs))


def ps_mul(a: PolySeries, b: PolySeries) -> PolySeries:
    """Cauchy product truncated to the smaller operand order."""
    n = min(a.order, b.order)
    out: list[Poly] = [_P_ZERO] * (n + 1)
    for i in range(n + 1):
        ai = a.coeffs[i]
        if ai.is_zero:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if bj.is_zero:
                continue
            out[i + j] = out[i + j] + ai * bj
    return PolySeries(n, out)


def ps_div(num: PolySeries, den: PolySeries) -> PolySeries:
    """Quotient after cancelling t^v from both sides, v = valuation(den).

    The lowest nonzero coefficient of ``den`` must be a nonzero scalar
    (higher coefficients may be polynomials).  ``num`` must vanish at
    least to order v.  The result has order min(num.order, den.order) - v.
    """
    v = den.valuation()
    if v is None:
        raise DivisionByNonUnit("division by the zero series")
    lead = den.coeffs[v]
    if not lead.is_scalar:
        raise DivisionByNonUnit(
            "lowest denominator coefficient must be scalar, got degree "
            f"{lead.degree}"
        )
    v_num = num.valuation()
    if v_num is not None and v_num < v:
        raise ValuationError(
            f"numerator valuation {v_num} < denominator valuation {v}"
        )
    n = min(num.order, den.order) - v
    if n < 0:
        raise ValuationError(
            "operands too short to determine any quotient coefficient"
        )
    inv_lead = _ONE / lead.constant_term
    nc = [num.coeffs[i + v] for i in range(n + 1)]
    dc = den.coeffs[v:]
    out: list[Poly] = []
    for i in range(n + 1):
        acc = nc[i]
        for j in range(max(0, i - len(dc) + 1), i):
            qj = out[j]
            if qj.is_zero:
                continue
            acc = acc - qj * dc[i - j]
        out.append(acc * inv_lead)
    return PolySeries(n, out)


def ps_compose(outer: PolySeries, inner: PolySeries) -> PolySeries:
    """outer(inner(t)) for scalar outer and inner with zero constant term."""
    if not outer.is_scalar_series():
        raise CompositionError("outer series must have scalar coefficients")
    if not inner.coeffs[0].is_zero:
        raise CompositionError("inner series must have zero constant term")
    n = min(outer.order, inner.order)
    inner_t = inner.truncate(n)
    acc = PolySeries.zero(n)
    for c in reversed(outer.coeffs[: n + 1]):
        acc = ps_mul(acc, inner_t)
        acc = ps_add(acc, PolySeries(n, (c,)))
    return acc


def ps_ipow(base: PolySeries, exponent: int) -> PolySeries:
    """Integer power by repeated squaring; exponent 0 gives the one series."""
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    result = PolySeries.one(base.order)
    square = base
    e = exponent
    while e:
        if e & 1:
            result = ps_mul(result, square)
        e >>= 1
        if e:
            square = ps_mul(square, square)
    return result


def ps_exp_linear(rate: _Scalar, order: int) -> PolySeries:
    """Series of exp(rate * t): scalar coefficients rate^n / n!."""
    rate = _fr(rate)
    return PolySeries.from_scalars(
        (rate**n / math.factorial(n) for n in range(order + 1)), order
    )


def ps_exp_x(rate: _Scalar, order: int) -> PolySeries:
    """Series of exp(x * rate * t): coefficient of t^n is (rate^n/n!) x^n."""
    rate = _fr(rate)
    return PolySeries(
        order,
        (
            Poly.monomial(n, rate**n / math.factorial(n))
            for n in range(order + 1)
        ),
    )


class BiSeries:
    """Series in (t, u) truncated at orders (nt, nu), scalar coefficients."""

    __slots__ = ("orders", "coeffs")

    orders: tuple[int, int]
    coeffs: tuple[tuple[Fraction, ...], ...]

    def __init__(
        self,
        orders: tuple[int, int],
        coeffs: Sequence[Sequence[_Scalar]] | None = None,
    ):
        nt, nu = orders
        if nt < 0 or nu < 0:
            raise ValueError("orders must be >= 0")
        grid: list[tuple[Fraction, ...]] = []
        for n in range(nt + 1):
            row = coeffs[n] if coeffs is not None and n < len(coeffs) else ()
            cs = [_fr(c) for c in row]
            if len(cs) > nu + 1:
                raise ValueError("more u-coefficients than order allows")
            cs.extend([_ZERO] * (nu + 1 - len(cs)))
            grid.append(tuple(cs))
        object.__setattr__(self, "orders", (nt, nu))
        object.__setattr__(self, "coeffs", tuple(grid))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("BiSeries is immutable")

    @classmethod
    def zero(cls, orders: tuple[int, int]) -> "BiSeries":
        return cls(orders)

    @classmethod
    def one(cls, orders: tuple[int, int]) -> "BiSeries":
        return cls(orders, ((1,),))

    @classmethod
    def from_t_scalars(
        cls, values: Iterable[_Scalar], orders: tuple[int, int]
    ) -> "BiSeries":
        return cls(orders, [(v,) for v in values])

    @classmethod
    def from_u_scalars(
        cls, values: Iterable[_Scalar], orders: tuple[int, int]
    ) -> "BiSeries":
        return cls(orders, (tuple(values),))

    def entry(self, n: int, m: int) -> Fraction:
        return self.coeffs[n][m]

    def __add__(self, other: "BiSeries") -> "BiSeries":
        nt = min(self.orders[0], other.orders[0])
        nu = min(self.orders[1], other.orders[1])
        return BiSeries(
            (nt, nu),
            [
                [self.coeffs[n][m] + other.coeffs[n][m] for m in range(nu + 1)]
                for n in range(nt + 1)
            ],
        )

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __neg__(self) -> "BiSeries":
        return BiSeries(
            self.orders, [[-c for c in row] for row in self.coeffs]
        )

    def scale(self, factor: _Scalar) -> "BiSeries":
        f = _fr(factor)
        return BiSeries(
            self.orders, [[c * f for c in row] for row in self.coeffs]
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BiSeries):
            return self.orders == other.orders and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.orders, self.coeffs))

    def __repr__(self) -> str:
        return f"BiSeries(orders={self.orders})"


def bis_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    nt = min(a.orders[0], b.orders[0])
    nu = min(a.orders[1], b.orders[1])
    out = [[_ZERO] * (nu + 1) for _ in range(nt + 1)]
    for i in range(nt + 1):
        for j in range(nu + 1):
            aij = a.coeffs[i][j]
            if aij == 0:
                continue
            for p in range(nt + 1 - i):
                brow = b.coeffs[p]
                for q in range(nu + 1 - j):
                    bpq = brow[q]
                    if bpq == 0:
                        continue
                    out[i + p][j + q] += aij * bpq
    return BiSeries((nt, nu), out)


def bis_geom(z: BiSeries) -> BiSeries:
    """Geometric sum 1/(1-z) for z with zero constant term.

    z^m has total valuation >= m, so summing to m = nt + nu is exact on
    the truncation grid.  Evaluated by Horner: 1 + z(1 + z(...)).
    """
    if z.coeffs[0][0] != 0:
        raise GeomError("geometric inversion needs zero constant term")
    nt, nu = z.orders
    acc = BiSeries.one(z.orders)
    for _ in range(nt + nu):
        acc = bis_mul(z, acc)
        acc = acc + BiSeries.one(z.orders)
    return acc
