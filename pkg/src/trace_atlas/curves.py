"""Limit curve L(c), lower-bound curve l(c), the K_v family, theta and areas.

All production evaluation is in double precision.  Both curves are evaluated
through algebraically rearranged forms built on ``log1p`` so that the
``c -> 0`` end does not lose digits to cancellation; the literal formulas
are kept (:func:`limit_curve_L_direct`, :func:`K_v`) and cross-checked in
the test suite.
"""

from __future__ import annotations

import csv
import io
import json
import math
import threading
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .errors import BracketFailure, DomainError, OrderingViolation

Curve = Callable[[float], float]
CurveLike = Union[Curve, float, int]

DEFAULT_QUAD_TOL = 1e-7
MAX_DEPTH = 40
ORDERING_SLACK = 1e-9


def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0 else 0.0


def h(a: float, b: float) -> float:
    """a log a - b log b - (a-b) log(a-b), with 0 log 0 = 0."""
    if a <= 0 or b < 0 or b > a:
        raise DomainError(f"h needs 0 <= b <= a and a > 0, got a={a}, b={b}")
    return _xlogx(a) - _xlogx(b) - _xlogx(a - b)


def _check_unit(c: float) -> None:
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"c must lie in [0, 1], got {c}")


# --------------------------------------------------------------------------
# once-only cache


def _once(fn):
    lock = threading.Lock()
    cache: dict = {}

    def wrapper(*args):
        try:
            return cache[args]
        except KeyError:
            pass
        with lock:
            if args not in cache:
                cache[args] = fn(*args)
            return cache[args]

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.cache = cache
    return wrapper


def richardson_limit_at_zero(fn: Curve, k_min: int = 10, k_max: int = 30) -> float:
    """Extrapolate fn(c) to c = 0+ from c = 2^-k, k = k_min..k_max (Neville)."""
    hs = [2.0 ** -k for k in range(k_min, k_max + 1)]
    table = [fn(x) for x in hs]
    for level in range(1, len(hs)):
        for i in range(len(hs) - level):
            hi, hj = hs[i], hs[i + level]
            # interpolating polynomial through nodes i..i+level, evaluated at 0
            table[i] = (hi * table[i + 1] - hj * table[i]) / (hi - hj)
    return table[0]


# --------------------------------------------------------------------------
# L(c)


def limit_curve_L_direct(c: float) -> float:
    """exp((h(2-c, 2-2c) - h(1, c)) / c) exactly as written, for c in (0, 1]."""
    return math.exp((h(2 - c, 2 - 2 * c) - h(1, c)) / c)


def _log_L_open(c: float) -> float:
    # c log c cancels between the two h terms; what remains is
    # log 2 + ((2-c) log1p(-c/2) - (1-c) log1p(-c)) / c
    tail = 0.0 if c == 1.0 else (1 - c) * math.log1p(-c)
    return math.log(2.0) + ((2 - c) * math.log1p(-c / 2) - tail) / c


@_once
def L_at_zero() -> float:
    return math.exp(richardson_limit_at_zero(_log_L_open))


def limit_curve_L(c: float) -> float:
    """Conjectured limit curve of the normalized Siegel-family coefficients."""
    _check_unit(c)
    if c == 0.0:
        return L_at_zero()
    return math.exp(_log_L_open(c))


# --------------------------------------------------------------------------
# theta


def theta_equation(v: float) -> float:
    """g(v) = (1+v)^2 log(1 + 1/v) + log v - v - 1."""
    return (1 + v) ** 2 * math.log1p(1 / v) + math.log(v) - v - 1


def theta_equation_derivative(v: float) -> float:
    return 2 * (1 + v) * math.log1p(1 / v) - 2


@dataclass(frozen=True)
class ThetaSolution:
    theta: float
    residual: float
    bracket: tuple[float, float]


def solve_theta(lo: float = 0.1, hi: float = 1.0, tol: float = 0.0) -> ThetaSolution:
    """Bisect g on [lo, hi] down to width 1e-3, then safeguarded Newton to ulp level."""
    g_lo, g_hi = theta_equation(lo), theta_equation(hi)
    if not (g_lo < 0 < g_hi):
        raise BracketFailure(f"g({lo}) = {g_lo}, g({hi}) = {g_hi}: no sign change")
    a, b = lo, hi
    while b - a > 1e-3:
        m = 0.5 * (a + b)
        if theta_equation(m) < 0:
            a = m
        else:
            b = m
    v = 0.5 * (a + b)
    for _ in range(100):
        gv = theta_equation(v)
        if abs(gv) <= tol:
            break
        if gv < 0:
            a = v
        else:
            b = v
        step = v - gv / theta_equation_derivative(v)
        if abs(step - v) <= 2e-16 * v:
            v = step
            break
        v = step if a < step < b else 0.5 * (a + b)
        if b - a < 1e-16 * v:
            break
    return ThetaSolution(v, theta_equation(v), (lo, hi))


@_once
def cached_theta() -> float:
    return solve_theta().theta


# --------------------------------------------------------------------------
# K_v(c) and l(c)


def K_v(c: float, v: float) -> float:
    """exp((c(v+1) log(v+1) + (1-c) v log v - (c+v) log(v+c)) / (1-c)) for c in [0, 1)."""
    if v <= 0:
        raise DomainError(f"v must be positive, got {v}")
    if not 0.0 <= c < 1.0:
        raise DomainError(f"c must lie in [0, 1), got {c}")
    num = c * (v + 1) * math.log(v + 1) + (1 - c) * v * math.log(v) - (c + v) * math.log(v + c)
    return math.exp(num / (1 - c))


def _log_ell_open(c: float, theta: float) -> float:
    # the (theta+1) log(theta+1) terms combine to -c theta log(theta+1)
    return -theta * math.log1p(1 / theta) + (c - 1 - theta) / c * math.log1p(-c / (1 + theta))


@_once
def ell_at_zero(theta: float) -> float:
    return math.exp(richardson_limit_at_zero(lambda c: _log_ell_open(c, theta)))


def lower_curve_ell(c: float, theta: float | None = None) -> float:
    """Proven lower-bound curve; theta defaults to the cached solution."""
    _check_unit(c)
    if theta is None:
        theta = cached_theta()
    if c == 0.0:
        return ell_at_zero(theta)
    return math.exp(_log_ell_open(c, theta))


def one(c: float) -> float:
    return 1.0


CURVES: dict[str, Curve] = {"L": limit_curve_L, "ell": lower_curve_ell, "one": one}


# --------------------------------------------------------------------------
# quadrature


def adaptive_simpson(
    f: Curve, a: float, b: float, tol: float = DEFAULT_QUAD_TOL, max_depth: int = MAX_DEPTH
) -> float:
    """Adaptive Simpson integral of f over [a, b] with absolute error target tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a == b:
        return 0.0

    def simpson(fa: float, fm: float, fb: float, width: float) -> float:
        return width / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        delta = left + right - whole
        if depth >= max_depth or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return recurse(a, m, fa, flm, fm, left, tol / 2, depth + 1) + recurse(
            m, b, fm, frm, fb, right, tol / 2, depth + 1
        )

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 0)


def _as_curve(x: CurveLike) -> Curve:
    if callable(x):
        return x
    value = float(x)
    return lambda c: value


def area_between(
    upper: CurveLike, lower: CurveLike, lo: float = 0.0, hi: float = 1.0, tol: float = DEFAULT_QUAD_TOL
) -> float:
    """Integral of upper - lower over [lo, hi]; raises OrderingViolation if upper < lower at any node."""
    up, low = _as_curve(upper), _as_curve(lower)

    def gap(c: float) -> float:
        d = up(c) - low(c)
        if d < -ORDERING_SLACK:
            raise OrderingViolation(f"upper < lower at c={c!r} (difference {d:.3e})")
        return d

    return adaptive_simpson(gap, lo, hi, tol)


def coverage_ratio(tol: float = DEFAULT_QUAD_TOL) -> float:
    """Fraction of the region between L and y=1 that lies below l."""
    return area_between(lower_curve_ell, 1.0, tol=tol) / area_between(limit_curve_L, 1.0, tol=tol)


@dataclass(frozen=True)
class AreaReport:
    upper: str
    lower: str
    area: float
    tol: float
    ratio: float | None = None

    def to_json(self) -> str:
        d = {"upper": self.upper, "lower": self.lower, "area": self.area, "tol": self.tol}
        if self.ratio is not None:
            d["ratio"] = self.ratio
        return json.dumps(d)


# --------------------------------------------------------------------------
# sampled tables


@dataclass(frozen=True)
class CurveTable:
    kind: str
    samples: tuple[tuple[float, float], ...]
    grid: str
    v: float | None = None

    def __post_init__(self) -> None:
        cs = [c for c, _ in self.samples]
        if any(not 0.0 <= c <= 1.0 for c in cs):
            raise DomainError("sample abscissae must lie in [0, 1]")
        if any(b <= a for a, b in zip(cs, cs[1:])):
            raise DomainError("sample abscissae must be strictly increasing")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["c", "y"])
        for c, y in self.samples:
            w.writerow([f"{c:.12g}", f"{y:.12g}"])
        return buf.getvalue()


def uniform_grid(count: int, lo: float = 0.0, hi: float = 1.0) -> list[float]:
    if count < 2:
        raise ValueError("grid needs at least 2 points")
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def sample_curve(kind: str, count: int, v: float | None = None) -> CurveTable:
    """Tabulate one curve on a uniform grid of [0, 1].

    ``kind`` is one of ``L``, ``ell``, ``K_v`` (needs ``v``; sampled on
    [0, 1) since the c = 1 end belongs to l(0)) or ``constant`` (y = 1).
    """
    grid = uniform_grid(count)
    if kind == "K_v":
        if v is None:
            raise ValueError("K_v needs v")
        fn: Curve = lambda c: K_v(c, v)
        grid = grid[:-1]
    elif kind == "constant":
        fn = one
    elif kind in CURVES:
        fn = CURVES[kind]
    else:
        raise ValueError(f"unknown curve kind {kind!r}")
    return CurveTable(kind, tuple((c, fn(c)) for c in grid), f"uniform:{count}", v)
