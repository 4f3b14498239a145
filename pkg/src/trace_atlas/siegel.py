"""The Siegel family g_p: minimal polynomials of zeta + 1/zeta + 2.

Two independent constructions are provided, one from Chebyshev polynomials
of the second kind and one from the closed-form binomial coefficients, plus
the recurrence obtained from the rational generating function
(1 + u) / (1 + 2u - uv + u^2), which serves as an oracle for both.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NotOddPrime
from .exactpoly import IntPoly, binomial, chebyshev_U_half, compose_shift

DEFAULT_PRIME_CAP = 10007


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def odd_primes_upto(limit: int) -> list[int]:
    return [p for p in range(3, limit + 1, 2) if is_odd_prime(p)]


def _check_prime(p: int, cap: int) -> int:
    if not isinstance(p, int) or not is_odd_prime(p):
        raise NotOddPrime(f"{p!r} is not an odd prime")
    if p > cap:
        raise NotOddPrime(f"{p} exceeds the prime cap {cap}")
    return (p - 1) // 2


@dataclass(frozen=True)
class SiegelPoly:
    p: int
    poly: IntPoly

    @property
    def n(self) -> int:
        return (self.p - 1) // 2

    @property
    def expected_trace(self) -> Fraction:
        return 2 - Fraction(2, self.p - 1)


def siegel_poly_constructive(p: int, cap: int = DEFAULT_PRIME_CAP) -> SiegelPoly:
    """g_p(x) = f(x - 2) with f = U_n(x/2) + U_{n-1}(x/2), the minimal polynomial of zeta + 1/zeta."""
    n = _check_prime(p, cap)
    f = chebyshev_U_half(n) + chebyshev_U_half(n - 1)
    return SiegelPoly(p, compose_shift(f, -2))


def siegel_poly_closed_form(p: int, cap: int = DEFAULT_PRIME_CAP) -> SiegelPoly:
    """g_p(x) = sum_d (-1)^(n-d) C(n+d, 2d) x^d."""
    n = _check_prime(p, cap)
    return SiegelPoly(p, IntPoly(tuple((-1) ** (n - d) * binomial(n + d, 2 * d) for d in range(n + 1))))


siegel_poly = siegel_poly_closed_form


def gmj_recurrence_table(m_max: int, j_max: int) -> list[list[int]]:
    """Coefficients g_{m,j} of (1+u)/(1+2u-uv+u^2), table[m][j].

    Clearing the denominator gives
    g_{m,j} = -2 g_{m-1,j} + g_{m-1,j-1} - g_{m-2,j} + [m=0,j=0] + [m=1,j=0].
    """
    if m_max < 0 or j_max < 0:
        raise ValueError("table bounds must be nonnegative")
    table = [[0] * (j_max + 1) for _ in range(m_max + 1)]

    def at(m: int, j: int) -> int:
        return table[m][j] if m >= 0 and j >= 0 else 0

    for m in range(m_max + 1):
        for j in range(j_max + 1):
            v = -2 * at(m - 1, j) + at(m - 1, j - 1) - at(m - 2, j)
            if j == 0 and m in (0, 1):
                v += 1
            table[m][j] = v
    return table


def gmj_closed_form(m: int, j: int) -> int:
    return (-1) ** ((m - j) % 2) * binomial(m + j, 2 * j)


def absolute_trace(f: IntPoly) -> Fraction:
    """A(f) = a_{n-1} / n as an exact rational."""
    n = f.degree
    if n < 1 or not f.is_monic():
        raise ValueError("absolute trace needs a monic polynomial of degree >= 1")
    return Fraction(f.a(n - 1), n)


@dataclass(frozen=True)
class NormalizedPoint:
    """(d/n, (a_{n-d} / C(n, d))^(1/d)) for one coefficient of one polynomial."""

    d: int
    n: int
    value: float

    @property
    def c_exact(self) -> Fraction:
        return Fraction(self.d, self.n)

    @property
    def c(self) -> float:
        return self.d / self.n


def normalized_points(f: IntPoly) -> list[NormalizedPoint]:
    """Points for d = 1..n; raises NegativeCoefficient if some a_k <= 0."""
    n = f.degree
    if n < 1:
        raise ValueError("degree must be at least 1")
    f.check_viete_positive()
    out = []
    for d in range(1, n + 1):
        # math.log is exact-to-rounding on ints of any size
        log_s = math.log(f.a(n - d)) - math.log(binomial(n, d))
        out.append(NormalizedPoint(d, n, math.exp(log_s / d)))
    return out


def format_sig(x: float, digits: int = 12) -> str:
    return f"{x:.{digits}g}"


POINTS_HEADER = ("p", "n", "d", "c", "value")


def points_csv(rows: Iterable[tuple[int, NormalizedPoint]]) -> str:
    """CSV with header p,n,d,c,value; rows sorted by p then d."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(POINTS_HEADER)
    for p, pt in sorted(rows, key=lambda r: (r[0], r[1].d)):
        w.writerow([p, pt.n, pt.d, format_sig(pt.c), format_sig(pt.value)])
    return buf.getvalue()
