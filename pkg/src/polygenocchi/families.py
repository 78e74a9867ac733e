"""Polynomial family construction from generating-function kernels.

A family is a kernel series K(t) times an exponential factor, expanded as
sum_n P_n(x) t^n / n!.  The two parametrized poly-Genocchi families attach
exp(x t ln c); every other family here attaches plain exp(x t).  The
polynomials are recovered from plain Taylor coefficients as P_n = n! c_n.

Family tags and their kernels:

* ``type1``: (Li_k(1 - (ab)^{-2t}) / (a^{-t} + lam b^t))^alpha
* ``type2``: (e_k(log(1 + 2t log ab)) / (a^{-t} + lam b^t))^alpha
* ``apostol-poly-bernoulli-t1``: (Li_k(1 - e^{-t}) / (lam e^t - 1))^alpha
* ``apostol-poly-bernoulli-t2``: (e_k(log(1 + t)) / (lam e^t - 1))^alpha
* ``apostol-bernoulli-higher``: (t / (lam e^t - 1))^alpha
* ``frobenius-higher``: ((1 - mu) / (e^t - mu))^alpha
* ``classical-genocchi[-higher]``: (2t / (e^t + 1))^alpha, alpha = 1 if not higher
* ``apostol-genocchi[-higher]``: (2t / (lam e^t + 1))^alpha

Families that do not mention a parameter ignore it (their expansions echo
the parameter point they were asked for, but the polynomials depend only
on what the kernel uses).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .combinatorics import binomial
from .errors import SingularDenominator
from .kernels import (
    K_MAX,
    ParamPoint,
    expm1_series,
    kernel_type1,
    kernel_type2,
    log1p_linear,
    polyexp_series,
    polylog_series,
)
from .series import (
    BiSeries,
    Poly,
    PolySeries,
    bis_geom,
    bis_mul,
    ps_add,
    ps_div,
    ps_exp_linear,
    ps_exp_x,
    ps_ipow,
    ps_mul,
    ps_scale,
)

TYPE1 = "type1"
TYPE2 = "type2"
BERNOULLI_T1 = "apostol-poly-bernoulli-t1"
BERNOULLI_T2 = "apostol-poly-bernoulli-t2"
APOSTOL_BERNOULLI = "apostol-bernoulli-higher"
FROBENIUS = "frobenius-higher"
CLASSICAL_GENOCCHI = "classical-genocchi"
CLASSICAL_GENOCCHI_HIGHER = "classical-genocchi-higher"
APOSTOL_GENOCCHI = "apostol-genocchi"
APOSTOL_GENOCCHI_HIGHER = "apostol-genocchi-higher"

ALL_TAGS = (
    TYPE1,
    TYPE2,
    BERNOULLI_T1,
    BERNOULLI_T2,
    APOSTOL_BERNOULLI,
    FROBENIUS,
    CLASSICAL_GENOCCHI,
    CLASSICAL_GENOCCHI_HIGHER,
    APOSTOL_GENOCCHI,
    APOSTOL_GENOCCHI_HIGHER,
)

# tags whose kernel involves a polylog/polyexp order k
POLY_ORDER_TAGS = frozenset({TYPE1, TYPE2, BERNOULLI_T1, BERNOULLI_T2})
# tags that attach exp(x t ln c) rather than exp(x t)
LN_C_TAGS = frozenset({TYPE1, TYPE2})
# tags fixed at alpha = 1
ORDER_ONE_TAGS = frozenset({CLASSICAL_GENOCCHI, APOSTOL_GENOCCHI})

_Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class FamilySpec:
    """Which family to expand: tag plus (k, alpha, mu) as the tag needs."""

    tag: str
    k: Optional[int] = None
    alpha: int = 1
    mu: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.tag not in ALL_TAGS:
            raise ValueError(f"unknown family tag {self.tag!r}")
        if self.tag in POLY_ORDER_TAGS:
            if self.k is None:
                raise ValueError(f"family {self.tag!r} needs a polylog order k")
        elif self.k is not None:
            raise ValueError(f"family {self.tag!r} takes no polylog order")
        if not isinstance(self.alpha, int) or self.alpha < 0:
            raise ValueError("alpha must be a nonnegative integer")
        if self.tag in ORDER_ONE_TAGS and self.alpha != 1:
            raise ValueError(f"family {self.tag!r} is fixed at alpha = 1")
        if self.tag == FROBENIUS:
            if self.mu is None:
                raise ValueError("frobenius-higher needs mu")
            object.__setattr__(self, "mu", Fraction(self.mu))
            if self.mu == 1:
                raise SingularDenominator("mu = 1 is singular for frobenius")
        elif self.mu is not None:
            raise ValueError(f"family {self.tag!r} takes no mu")


@dataclass(frozen=True)
class FamilyExpansion:
    """Expansion result: polynomials P_0..P_order of one family instance."""

    spec: FamilySpec
    params: ParamPoint
    order: int
    polys: tuple[Poly, ...]


def _bernoulli_denominator(lam: Fraction, order: int) -> PolySeries:
    # lam e^t - 1
    return ps_add(
        ps_scale(ps_exp_linear(1, order), lam),
        ps_scale(PolySeries.one(order), -1),
    )


def _genocchi_plain_denominator(lam: Fraction, order: int) -> PolySeries:
    # lam e^t + 1
    if 1 + lam == 0:
        raise SingularDenominator("lam = -1 makes lam e^t + 1 vanish at t = 0")
    return ps_add(ps_scale(ps_exp_linear(1, order), lam), PolySeries.one(order))


def _quotient_power(num_fn, den_fn, alpha: int, order: int) -> PolySeries:
    """(num/den)^alpha at ``order``, padding past denominator valuation.

    The valuation is probed past ``order`` so that low truncation orders
    do not mistake a t-multiple denominator (e.g. e^t - 1) for zero.
    """
    probe = den_fn(order + 2)
    v = probe.valuation()
    if v is None or v > 2:
        raise SingularDenominator("kernel denominator vanishes at t = 0")
    den = probe.truncate(order + v)
    num = num_fn(order + v)
    return ps_ipow(ps_div(num, den), alpha)


def _kernel(
    spec: FamilySpec, point: ParamPoint, order: int, from_zero: bool
) -> PolySeries:
    tag = spec.tag
    if from_zero and tag != TYPE1:
        raise ValueError("polylog_from_zero applies to the type1 family only")
    if tag == TYPE1:
        return kernel_type1(
            point, spec.k, spec.alpha, order, polylog_from_zero=from_zero
        )
    if tag == TYPE2:
        return kernel_type2(point, spec.k, spec.alpha, order)
    if tag == BERNOULLI_T1:
        return _quotient_power(
            lambda n: polylog_series(spec.k, ps_scale(expm1_series(-1, n), -1)),
            lambda n: _bernoulli_denominator(point.lam, n),
            spec.alpha,
            order,
        )
    if tag == BERNOULLI_T2:
        return _quotient_power(
            lambda n: polyexp_series(spec.k, log1p_linear(1, n)),
            lambda n: _bernoulli_denominator(point.lam, n),
            spec.alpha,
            order,
        )
    if tag == APOSTOL_BERNOULLI:
        return _quotient_power(
            lambda n: PolySeries(n, (0, 1)) if n >= 1 else PolySeries.zero(n),
            lambda n: _bernoulli_denominator(point.lam, n),
            spec.alpha,
            order,
        )
    if tag == FROBENIUS:
        mu = spec.mu
        return _quotient_power(
            lambda n: ps_scale(PolySeries.one(n), 1 - mu),
            lambda n: ps_add(
                ps_exp_linear(1, n), ps_scale(PolySeries.one(n), -mu)
            ),
            spec.alpha,
            order,
        )
    if tag in (CLASSICAL_GENOCCHI, CLASSICAL_GENOCCHI_HIGHER):
        lam = Fraction(1)
    else:
        lam = point.lam
    return _quotient_power(
        lambda n: ps_scale(PolySeries(n, (0, 1)), 2)
        if n >= 1
        else PolySeries.zero(n),
        lambda n: _genocchi_plain_denominator(lam, n),
        spec.alpha,
        order,
    )


def family_polyseries(
    spec: FamilySpec,
    point: ParamPoint,
    order: int,
    *,
    polylog_from_zero: bool = False,
) -> PolySeries:
    """Kernel times exponential factor, as plain Taylor coefficients."""
    kernel = _kernel(spec, point, order, polylog_from_zero)
    rate = point.ln_c if spec.tag in LN_C_TAGS else Fraction(1)
    return ps_mul(kernel, ps_exp_x(rate, order))


@lru_cache(maxsize=None)
def _expansion_cached(
    spec: FamilySpec, point: ParamPoint, order: int, from_zero: bool
) -> FamilyExpansion:
    series = family_polyseries(spec, point, order, polylog_from_zero=from_zero)
    polys = tuple(
        series.coeffs[n] * math.factorial(n) for n in range(order + 1)
    )
    return FamilyExpansion(spec, point, order, polys)


def family_series(
    spec: FamilySpec,
    point: ParamPoint,
    order: int,
    *,
    polylog_from_zero: bool = False,
) -> FamilyExpansion:
    """Expand one family instance to P_0 .. P_order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return _expansion_cached(spec, point, order, polylog_from_zero)


def polynomial_at(spec: FamilySpec, point: ParamPoint, n: int) -> Poly:
    """P_n(x) of the family instance."""
    return family_series(spec, point, n).polys[n]


def numbers_at(spec: FamilySpec, point: ParamPoint, n: int) -> Fraction:
    """The family number P_n(0); independent of ln_c by construction."""
    return family_series(spec, point, n).polys[n].evaluate(0)


def numbers_list(
    spec: FamilySpec, point: ParamPoint, order: int
) -> tuple[Fraction, ...]:
    """P_0(0) .. P_order(0) from a single expansion."""
    exp = family_series(spec, point, order)
    return tuple(p.evaluate(0) for p in exp.polys)


def appell_expand(spec: FamilySpec, point: ParamPoint, n: int) -> Poly:
    """Appell reconstruction sum_i C(n,i) P_i(0) x^{n-i}.

    Equals P_n(x) of the same family taken at ln_c = 1, because the
    numbers P_i(0) do not involve ln_c.
    """
    nums = numbers_list(spec, point, n)
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        out[n - i] += binomial(n, i) * nums[i]
    return Poly(out)


def symmetrized_S(
    m: int,
    n: int,
    alpha: int,
    point: ParamPoint,
    y: _Scalar,
    *,
    polylog_from_zero: bool = False,
) -> Poly:
    """Symmetrized combination S_n^{(m,alpha)}(x, y) as a Poly in x.

    S = sum_{j<=m} C(m,j) G_n^{(-j,alpha)}(x) / (ln ab)^n
        * ((y ln c + alpha ln a)/(ln ab))^{m-j},
    built from the type-1 family at nonpositive polylog orders.
    """
    lab = point.ln_ab
    if lab == 0:
        raise SingularDenominator("ln(ab) = 0 in symmetrized combination")
    y = Fraction(y)
    w = (y * point.ln_c + alpha * point.ln_a) / lab
    inv_lab_n = Fraction(1) / lab**n
    acc = Poly()
    for j in range(m + 1):
        spec_j = FamilySpec(TYPE1, k=-j, alpha=alpha)
        p = family_series(
            spec_j, point, n, polylog_from_zero=polylog_from_zero
        ).polys[n]
        acc = acc + p * (binomial(m, j) * w ** (m - j) * inv_lab_n)
    return acc


def double_gf_rhs(
    alpha: int,
    point: ParamPoint,
    x: _Scalar,
    y: _Scalar,
    orders: tuple[int, int],
) -> BiSeries:
    """Closed form of the symmetrized double generating function.

    exp(Au) exp((B+2)t) / ((1 + lam e^t)(e^{2t} - e^{2t+u} + e^u))
    with A = (y ln c + alpha ln a)/ln ab and B likewise for x.
    """
    if 1 + point.lam == 0:
        raise SingularDenominator("lam = -1 in double generating function")
    lab = point.ln_ab
    if lab == 0:
        raise SingularDenominator("ln(ab) = 0 in double generating function")
    x = Fraction(x)
    y = Fraction(y)
    a_rate = (y * point.ln_c + alpha * point.ln_a) / lab
    b_rate = (x * point.ln_c + alpha * point.ln_a) / lab
    nt, nu = orders
    numer = BiSeries(
        orders,
        [
            [
                (b_rate + 2) ** n
                / math.factorial(n)
                * a_rate**m
                / math.factorial(m)
                for m in range(nu + 1)
            ]
            for n in range(nt + 1)
        ],
    )
    lam = point.lam
    den_t = BiSeries.from_t_scalars(
        [1 + lam] + [lam / math.factorial(n) for n in range(1, nt + 1)],
        orders,
    )
    grid = []
    for n in range(nt + 1):
        row = []
        two_n = Fraction(2) ** n / math.factorial(n)
        for m in range(nu + 1):
            val = -two_n / math.factorial(m)  # -e^{2t+u}
            if m == 0:
                val += two_n  # +e^{2t}
            if n == 0:
                val += Fraction(1, math.factorial(m))  # +e^{u}
            row.append(val)
        grid.append(row)
    den = bis_mul(den_t, BiSeries(orders, grid))
    c00 = den.entry(0, 0)
    z = BiSeries.one(orders) - den.scale(Fraction(1) / c00)
    inv = bis_geom(z).scale(Fraction(1) / c00)
    return bis_mul(numer, inv)


def expansion_to_dict(exp: FamilyExpansion) -> dict:
    """JSON-ready dict; rationals as exact 'p/q' strings."""
    return {
        "family": exp.spec.tag,
        "k": exp.spec.k,
        "alpha": exp.spec.alpha,
        "mu": None if exp.spec.mu is None else str(exp.spec.mu),
        "lam": str(exp.params.lam),
        "ln_a": str(exp.params.ln_a),
        "ln_b": str(exp.params.ln_b),
        "ln_c": str(exp.params.ln_c),
        "order": exp.order,
        "polynomials": [[str(c) for c in p.coeffs] for p in exp.polys],
    }


def expansion_from_dict(data: dict) -> FamilyExpansion:
    spec = FamilySpec(
        tag=data["family"],
        k=data["k"],
        alpha=data["alpha"],
        mu=None if data["mu"] is None else Fraction(data["mu"]),
    )
    point = ParamPoint(
        Fraction(data["lam"]),
        Fraction(data["ln_a"]),
        Fraction(data["ln_b"]),
        Fraction(data["ln_c"]),
    )
    polys = tuple(Poly(Fraction(c) for c in row) for row in data["polynomials"])
    return FamilyExpansion(spec, point, data["order"], polys)
