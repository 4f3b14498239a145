"""Siegel's extremal machinery: P(t), Q_k(t), mu_0 and the inequalities built on them.

Everything is carried in log space.  For a tuple x_1..x_n of distinct
positive reals, ``a_k`` is the unsigned coefficient of x^k in prod (x - x_i)
(so a_k = e_{n-k}(x)), and S_k = a_{n-k} / C(n, k) with S_0 = 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateInput, DomainError

MIN_GAP_REL = 1e-12
MARGIN_SLACK = 1e-9


def _log_binom(n: int, k: int) -> float:
    return math.log(math.comb(n, k))


def log_P(t: float, n: int) -> float:
    """log P(t) with P(t) = (1/n!) prod_{j=0}^{n-2} ((t+j)/(n-j))^(n-j-1)."""
    if t <= 0:
        raise DomainError(f"P needs t > 0, got {t}")
    if n < 2:
        raise DomainError(f"P needs n >= 2, got {n}")
    s = math.fsum((n - j - 1) * (math.log(t + j) - math.log(n - j)) for j in range(n - 1))
    return s - math.lgamma(n + 1)


def log_P_derivative(t: float, n: int) -> float:
    return math.fsum((n - j - 1) / (t + j) for j in range(n - 1))


def log_Q(k: int, t: float, n: int) -> float:
    """log Q_k(t) = k sum_{j=k}^{n-1} log(t+j) - (n-k) sum_{j=0}^{k-1} log(t+j)."""
    if t <= 0:
        raise DomainError(f"Q needs t > 0, got {t}")
    if not 0 <= k <= n - 1:
        raise DomainError(f"need 0 <= k <= n-1, got k={k}, n={n}")
    if k == 0:
        return 0.0
    up = math.fsum(math.log(t + j) for j in range(k, n))
    down = math.fsum(math.log(t + j) for j in range(k))
    return k * up - (n - k) * down


def solve_mu0_log(n: int, target: float, rel_tol: float = 1e-12) -> float:
    """Unique t > 0 with log P(t) = target."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    lo = hi = 1.0
    if log_P(1.0, n) < target:
        while log_P(hi, n) < target:
            lo, hi = hi, 2 * hi
    else:
        while log_P(lo, n) >= target:
            if lo < 1e-300:
                raise DomainError("mu0 underflows")
            lo, hi = lo / 2, lo
    while hi - lo > 1e-3 * hi:
        m = 0.5 * (lo + hi)
        if log_P(m, n) < target:
            lo = m
        else:
            hi = m
    t = 0.5 * (lo + hi)
    for _ in range(60):
        r = log_P(t, n) - target
        if r < 0:
            lo = t
        elif r > 0:
            hi = t
        else:
            break
        nxt = t - r / log_P_derivative(t, n)
        nxt = nxt if lo < nxt < hi else 0.5 * (lo + hi)
        # run past rel_tol down to a few ulp; Newton is quadratic here so this costs one step
        done = abs(nxt - t) <= min(rel_tol, 4e-16) * t
        t = nxt
        if done or hi - lo <= 1e-16 * t:
            break
    return t


def solve_mu0(n: int, a0: float, delta: float) -> float:
    """Positive root of P(t) = a0^(n-1) / delta."""
    if a0 <= 0 or delta <= 0:
        raise DomainError("a0 and delta must be positive")
    return solve_mu0_log(n, (n - 1) * math.log(a0) - math.log(delta))


def discriminant_from_roots(xs: Sequence[float]) -> float:
    """prod_{i<j} (x_i - x_j)^2."""
    out = 1.0
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            out *= (xs[i] - xs[j]) ** 2
    return out


def log_discriminant(xs: Sequence[float]) -> float:
    total = 0.0
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            gap = abs(xs[i] - xs[j])
            if gap == 0:
                return -math.inf
            total += 2 * math.log(gap)
    return total


def elementary_symmetric(xs: Sequence[float]) -> list[float]:
    """[e_0, e_1, ..., e_n]."""
    e = [1.0] + [0.0] * len(xs)
    for i, x in enumerate(xs, 1):
        for j in range(i, 0, -1):
            e[j] += x * e[j - 1]
    return e


@dataclass(frozen=True)
class TupleInstance:
    """Distinct positive reals with their log-coefficients log a_k and log Delta."""

    xs: tuple[float, ...]
    log_a: tuple[float, ...]
    log_delta: float

    @property
    def n(self) -> int:
        return len(self.xs)

    @property
    def a(self) -> list[float]:
        return [math.exp(v) for v in self.log_a]

    @property
    def delta(self) -> float:
        return math.exp(self.log_delta)

    def log_S(self, k: int) -> float:
        """log(a_{n-k} / C(n, k)); S_0 = 1."""
        if k == 0:
            return 0.0
        return self.log_a[self.n - k] - _log_binom(self.n, k)

    @classmethod
    def from_roots(cls, xs: Sequence[float], log_delta: float | None = None) -> TupleInstance:
        xs = tuple(float(x) for x in xs)
        _check_tuple(xs)
        e = elementary_symmetric(xs)
        n = len(xs)
        log_a = tuple(math.log(e[n - k]) for k in range(n))
        return cls(xs, log_a, log_discriminant(xs) if log_delta is None else log_delta)

    @classmethod
    def from_polynomial(cls, a: Sequence[int], xs: Sequence[float], log_delta: float) -> TupleInstance:
        """Use exact coefficients a_0..a_{n-1} instead of recomputing them from roots."""
        xs = tuple(float(x) for x in xs)
        if len(a) != len(xs):
            raise ValueError("need one coefficient per root")
        _check_tuple(xs)
        return cls(xs, tuple(math.log(v) for v in a), log_delta)


def _check_tuple(xs: Sequence[float]) -> None:
    if len(xs) < 2:
        raise DomainError("need at least two numbers")
    if any(not (x > 0 and math.isfinite(x)) for x in xs):
        raise DomainError("all entries must be finite and positive")
    s = sorted(xs)
    gap = min(b - a for a, b in zip(s, s[1:]))
    if gap < MIN_GAP_REL * s[-1]:
        raise DegenerateInput(f"minimum gap {gap:.3e} below {MIN_GAP_REL} * max")


def _instance(xs) -> TupleInstance:
    return xs if isinstance(xs, TupleInstance) else TupleInstance.from_roots(xs)


def mu0_of(inst: TupleInstance) -> float:
    return solve_mu0_log(inst.n, (inst.n - 1) * inst.log_a[0] - inst.log_delta)


@dataclass(frozen=True)
class Theorem2Row:
    k: int
    log_lhs: float
    log_rhs: float
    margin: float


@dataclass(frozen=True)
class Theorem2Report:
    n: int
    mu0: float
    rows: tuple[Theorem2Row, ...]

    @property
    def min_margin(self) -> float:
        return min(r.margin for r in self.rows)

    @property
    def verdict(self) -> bool:
        return self.min_margin >= -MARGIN_SLACK

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mu0": self.mu0,
            "rows": [
                {"k": r.k, "log_lhs": r.log_lhs, "log_rhs": r.log_rhs, "margin": r.margin}
                for r in self.rows
            ],
            "verdict": "pass" if self.verdict else "fail",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def verify_theorem2(xs: Sequence[float] | TupleInstance) -> Theorem2Report:
    """Margins n log(a_k / C(n,k)) - log Q_k(mu0) - (n-k) log a_0 for k = 0..n-1."""
    inst = _instance(xs)
    n = inst.n
    mu0 = mu0_of(inst)
    rows = []
    for k in range(n):
        lhs = n * (inst.log_a[k] - _log_binom(n, k))
        rhs = log_Q(k, mu0, n) + (n - k) * inst.log_a[0]
        rows.append(Theorem2Row(k, lhs, rhs, lhs - rhs))
    return Theorem2Report(n, mu0, tuple(rows))


@dataclass(frozen=True)
class InequalityRow:
    k: int
    lhs: float
    rhs: float
    margin: float


def improved_newton_check(xs: Sequence[float] | TupleInstance) -> list[InequalityRow]:
    """Rows 2 log S_k against log S_{k-1} + log S_{k+1} + log(1 + 1/(mu0 + k - 1)), k = 1..n-1."""
    inst = _instance(xs)
    mu0 = mu0_of(inst)
    rows = []
    for k in range(1, inst.n):
        lhs = 2 * inst.log_S(k)
        rhs = inst.log_S(k - 1) + inst.log_S(k + 1) + math.log1p(1 / (mu0 + k - 1))
        rows.append(InequalityRow(k, lhs, rhs, lhs - rhs))
    return rows


def newton_check(xs: Sequence[float] | TupleInstance) -> list[InequalityRow]:
    """Plain Newton inequalities S_k^2 >= S_{k-1} S_{k+1}."""
    inst = _instance(xs)
    return [
        InequalityRow(k, 2 * inst.log_S(k), inst.log_S(k - 1) + inst.log_S(k + 1),
                      2 * inst.log_S(k) - inst.log_S(k - 1) - inst.log_S(k + 1))
        for k in range(1, inst.n)
    ]


def maclaurin_chain(xs: Sequence[float] | TupleInstance) -> list[float]:
    """log S_d^(1/d) for d = 1..n; non-increasing for positive tuples."""
    inst = _instance(xs)
    return [inst.log_S(d) / d for d in range(1, inst.n + 1)]


def special_case_margins(xs: Sequence[float] | TupleInstance) -> list[float]:
    """log (a_k/C(n,k))^(1/(n-k)) - log a_0^(1/n) for k = 0..n-1."""
    inst = _instance(xs)
    n = inst.n
    return [
        (inst.log_a[k] - _log_binom(n, k)) / (n - k) - inst.log_a[0] / n for k in range(n)
    ]


# --------------------------------------------------------------------------
# monotonicity of Q_k^(n-1) P^(n-k)


def lemma5_log_function(n: int, k: int, t: float) -> float:
    return (n - 1) * log_Q(k, t, n) + (n - k) * log_P(t, n)


def lemma5_derivative(n: int, k: int, t: float) -> float:
    """d/dt log(Q_k^(n-1) P^(n-k)) as an explicit sum of reciprocals."""
    a = k * (n - 1) * math.fsum(1 / (t + j) for j in range(k, n))
    b = (n - 1) * (n - k) * math.fsum(1 / (t + j) for j in range(k))
    c = (n - k) * math.fsum((n - j - 1) / (t + j) for j in range(n - 1))
    return a - b + c


def lemma5_monotonicity_check(n: int, k: int, grid: Sequence[float]) -> bool:
    """True iff the log function strictly increases along grid and its derivative is positive."""
    if not 0 <= k <= n - 1:
        raise DomainError(f"need 0 <= k <= n-1, got k={k}, n={n}")
    vals = [lemma5_log_function(n, k, t) for t in grid]
    if any(b <= a for a, b in zip(vals, vals[1:])):
        return False
    return all(lemma5_derivative(n, k, t) > 0 for t in grid)


# --------------------------------------------------------------------------
# large-n asymptotics


def asymptotic_log_Q_leading(c: float, v: float) -> float:
    """Coefficient of n^2 in log Q_{cn}(vn)."""
    return c * (1 + v) * math.log1p(v) - c * v * math.log(v) + v * math.log(v) - (c + v) * math.log(c + v)


@dataclass(frozen=True)
class AsymptoticComparison:
    n: int
    exact: float
    asymptotic: float
    relerr: float

    @property
    def scaled_error(self) -> float:
        """relerr * n / log n, which stays bounded if the error is O(n log n)."""
        return self.relerr * self.n / math.log(self.n)


def asymptotic_log_Q(c: float, v: float, n: int) -> AsymptoticComparison:
    """Compare log Q_k(vn) at k = floor(cn) with n^2 times the leading coefficient."""
    if not 0 < c < 1 or v <= 0:
        raise DomainError("need c in (0, 1) and v > 0")
    if n < 10:
        raise DomainError("need n >= 10")
    exact = log_Q(math.floor(c * n), v * n, n)
    asym = n * n * asymptotic_log_Q_leading(c, v)
    return AsymptoticComparison(n, exact, asym, abs(exact - asym) / n**2)


def key_inequality_margins(inst: TupleInstance, t: float) -> list[float] | None:
    """If Delta P(t) >= 1, margins n(n-1) log(a_k/C(n,k)) - (n-1) log Q_k(t); else None."""
    n = inst.n
    if inst.log_delta + log_P(t, n) < 0:
        return None
    return [
        n * (n - 1) * (inst.log_a[k] - _log_binom(n, k)) - (n - 1) * log_Q(k, t, n)
        for k in range(n)
    ]
