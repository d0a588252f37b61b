"""Truncated power series in ``t`` whose coefficients are polynomials in ``z``.

These carry the closed-form generating functions; every expansion is exact up
to the stated order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import as_q
from .qpoly import ONE, ZERO, QPoly

__all__ = [
    "DEFAULT_ORDER",
    "TSeries",
    "series_binomial",
    "series_exp",
    "series_log1m",
    "series_mul",
    "laguerre_kernel",
]

DEFAULT_ORDER = 32


class TSeries:
    """``sum_{k<=order} coeffs[k] t**k`` with :class:`QPoly` coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = [c if isinstance(c, QPoly) else QPoly([c]) for c in coeffs][: order + 1]
        cs += [ZERO] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, order: int) -> TSeries:
        return cls([ONE], order)

    @classmethod
    def t_power(cls, k: int, order: int, coeff=ONE) -> TSeries:
        return cls([ZERO] * k + [coeff], order)

    def __getitem__(self, k: int) -> QPoly:
        return self.coeffs[k]

    def __add__(self, other: TSeries) -> TSeries:
        order = min(self.order, other.order)
        return TSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], order)

    def __neg__(self) -> TSeries:
        return TSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other: TSeries) -> TSeries:
        return self + (-other)

    def __mul__(self, other) -> TSeries:
        if isinstance(other, TSeries):
            return series_mul(self, other)
        return TSeries([c * other for c in self.coeffs], self.order)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def deriv_t(self) -> TSeries:
        """Term-wise ``d/dt``; the result has order one less."""
        return TSeries(
            [k * c for k, c in enumerate(self.coeffs)][1:], max(self.order - 1, 0)
        )

    def __repr__(self) -> str:
        body = " + ".join(f"({c.pretty()})t^{k}" for k, c in enumerate(self.coeffs) if c)
        return f"TSeries({body or '0'}, order={self.order})"


def series_mul(a: TSeries, b: TSeries) -> TSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``."""
    order = min(a.order, b.order)
    out = []
    for k in range(order + 1):
        acc = ZERO
        for j in range(k + 1):
            x, y = a.coeffs[j], b.coeffs[k - j]
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return TSeries(out, order)


def series_binomial(gamma, order: int = DEFAULT_ORDER) -> TSeries:
    """``(1 - t)**(-gamma) = sum_k (gamma)_k / k! t**k``."""
    gamma = as_q(gamma)
    coeffs = []
    c = Fraction(1)
    for k in range(order + 1):
        coeffs.append(QPoly([c]))
        c = c * (gamma + k) / (k + 1)
    return TSeries(coeffs, order)


def series_exp(arg: TSeries) -> TSeries:
    """``exp(arg)`` via ``k f_k = sum_j j g_j f_{k-j}``.

    ``arg`` must have zero constant term.
    """
    if arg.coeffs[0]:
        raise ValueError("series_exp needs a zero constant term")
    g = arg.coeffs
    f = [ONE]
    for k in range(1, arg.order + 1):
        acc = ZERO
        for j in range(1, k + 1):
            if g[j] and f[k - j]:
                acc = acc + j * g[j] * f[k - j]
        f.append(acc / k)
    return TSeries(f, arg.order)


def series_log1m(order: int = DEFAULT_ORDER) -> TSeries:
    """``log(1 - t) = -sum_{k>=1} t**k / k``."""
    return TSeries([ZERO] + [QPoly([Fraction(-1, k)]) for k in range(1, order + 1)], order)


def laguerre_kernel(alpha, order: int = DEFAULT_ORDER, extra_power=Fraction(0)) -> TSeries:
    """``(1-t)**(-(alpha+1+extra_power)) * exp(-z t / (1-t))``.

    With ``extra_power == 0`` this is the Laguerre generating function.
    """
    alpha = as_q(alpha)
    mzt = TSeries.t_power(1, order, QPoly([0, -1]))
    arg = series_mul(mzt, series_binomial(1, order))
    return series_mul(series_binomial(alpha + 1 + as_q(extra_power), order), series_exp(arg))

