"""Base arithmetic on Q_p^n: valuations, norms, and Haar measures of balls.

Conventions used throughout the package:

* shells are indexed by the integer k with  S_k = {x : |x|_p = p^k};
* the Haar measure is normalized so |B_0| = 1, hence |B_k| = p^(kn)
  and |S_k| = p^(kn) (1 - p^(-n));
* exponents may be int, float or Fraction.  Fractions are kept exact so
  that sign decisions (convergence tests) never depend on rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParameterError

Number = Union[int, float, Fraction]

NEG_INF = float("-inf")
POS_INF = float("inf")


def is_prime(p: int) -> bool:
    """Trial-division primality check (p is small in practice)."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PadicContext:
    """The pair (prime p, dimension n) every computation is relative to."""

    p: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ParameterError(f"p must be a prime integer, got {self.p!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n!r}")

    @property
    def sphere_unit(self) -> float:
        """Measure of the unit sphere S_0, i.e. 1 - p^(-n)."""
        return 1.0 - float(self.p) ** (-self.n)

    def pow(self, expo: Number) -> float:
        """p**expo as a float; raises OverflowError past the double range."""
        try:
            return math.pow(self.p, float(expo))
        except OverflowError as exc:  # |expo|*log(p) beyond float exponent range
            raise OverflowError(f"p**{expo} exceeds double precision range") from exc


def padic_valuation(x: Union[int, Fraction], p: int) -> Union[int, float]:
    """v_p(x) for an exact rational x; +inf for x = 0 (so |0|_p = 0).

    x = p^v * (a/b) with p dividing neither a nor b.
    """
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p!r}")
    if isinstance(x, int):
        num, den = x, 1
    elif isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
    else:
        raise ParameterError(f"x must be an int or Fraction, got {type(x).__name__}")
    if num == 0:
        return POS_INF
    v = 0
    num = abs(num)
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def padic_norm(x: Union[int, Fraction], p: int) -> float:
    """|x|_p = p^(-v_p(x)); 0.0 for x = 0."""
    v = padic_valuation(x, p)
    if v == POS_INF:
        return 0.0
    return float(p) ** (-v)


def ball_measure(gamma: int, ctx: PadicContext) -> float:
    """|B_gamma|_H = p^(gamma*n)."""
    return ctx.pow(gamma * ctx.n)


def shell_measure(gamma: int, ctx: PadicContext) -> float:
    """|S_gamma|_H = p^(gamma*n) (1 - p^(-n))."""
    return ctx.pow(gamma * ctx.n) * ctx.sphere_unit
