"""Exact integer polynomials, Chebyshev construction and Sturm root counting.

Coefficients are stored constant-term first.  A degree ``n`` polynomial

    f(x) = x^n - a_{n-1} x^{n-1} + ... + (-1)^n a_0

has ``coeffs[k] == (-1)**(n - k) * a_k``; the conversion lives only in
:meth:`IntPoly.a` so the sign convention is handled in one place.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import NegativeCoefficient, NonSquarefree, ParseError

Number = Union[int, Fraction]
Endpoint = Union[int, float, Fraction]


def binomial(n: int, k: int) -> int:
    """C(n, k), with C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(1, k + 1):
        # exact at every step: out * (n - k + i) is divisible by i
        out = out * (n - k + i) // i
    return out


@dataclass(frozen=True)
class IntPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        cs = tuple(int(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs or (0,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def is_monic(self) -> bool:
        return self.leading == 1

    def a(self, k: int) -> int:
        """Unsigned Viète coefficient a_k = (-1)^(n-k) * coeffs[k]."""
        n = self.degree
        if not 0 <= k <= n:
            raise IndexError(k)
        c = self.coeffs[k]
        return c if (n - k) % 2 == 0 else -c

    def viete(self) -> list[int]:
        """[a_0, ..., a_{n-1}]."""
        return [self.a(k) for k in range(self.degree)]

    def check_viete_positive(self) -> None:
        """Raise NegativeCoefficient unless f is monic with every a_k > 0."""
        if not self.is_monic():
            raise NegativeCoefficient(f"polynomial is not monic (leading {self.leading})")
        for k, ak in enumerate(self.viete()):
            if ak <= 0:
                raise NegativeCoefficient(f"a_{k} = {ak} is not positive")

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:] or (0,))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        """Exact sign of f(x) for rational x."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = self.coeffs[-1]
        qk = 1
        for c in reversed(self.coeffs[:-1]):
            qk *= q
            acc = acc * p + c * qk
        return (acc > 0) - (acc < 0)

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def shift_up(self, m: int = 1) -> IntPoly:
        """Multiply by x^m."""
        if self.is_zero():
            return self
        return IntPoly((0,) * m + self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0 and self.degree > 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and i > 0) else str(mag)
            if i >= 1:
                body += "x" if i == 1 else f"x^{i}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


X = IntPoly((0, 1))


def chebyshev_U_half(m: int) -> IntPoly:
    """U_m(x/2) = sum_k (-1)^k C(m-k, k) x^(m-2k), built from the explicit sum."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    coeffs = [0] * (m + 1)
    for k in range(m // 2 + 1):
        coeffs[m - 2 * k] = (-1) ** k * binomial(m - k, k)
    return IntPoly(tuple(coeffs))


def chebyshev_U_half_recurrence(m: int) -> IntPoly:
    """U_m(x/2) from U_{j+1} = x U_j - U_{j-1}; independent of the binomial sum."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    prev, cur = IntPoly((1,)), X
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, cur.shift_up() - prev
    return cur


def compose_shift(f: IntPoly, s: int) -> IntPoly:
    """f(x + s), by Horner's scheme over the linear factor x + s."""
    out = [0]
    for c in reversed(f.coeffs):
        # out <- out * (x + s) + c
        nxt = [0] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i + 1] += v
            nxt[i] += s * v
        nxt[0] += c
        out = nxt
    return IntPoly(tuple(out))


# --------------------------------------------------------------------------
# Sturm chains


def _rational_remainder(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and any(r):
        q = r[-1] / lb
        shift = len(r) - 1 - db
        for i, bc in enumerate(b):
            r[shift + i] -= q * bc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _positive_primitive(r: Sequence[Fraction]) -> IntPoly:
    """Scale a rational polynomial by a positive constant to a primitive integer one."""
    den = 1
    for c in r:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in r]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return IntPoly(tuple(c // g for c in ints)) if g else IntPoly((0,))


@dataclass(frozen=True)
class SturmChain:
    """Signed remainder sequence f, f', -rem(f, f'), ...

    Elements after the first two are stored scaled by positive constants, which
    leaves every sign variation count unchanged.
    """

    polys: tuple[IntPoly, ...]

    @property
    def gcd(self) -> IntPoly:
        """Last nonzero element: gcd(f, f') up to a nonzero constant."""
        return self.polys[-1]

    def squarefree(self) -> bool:
        return self.gcd.degree == 0

    def variations(self, x: Endpoint) -> int:
        signs = [s for s in (_sign_at_endpoint(p, x) for p in self.polys) if s]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_chain(f: IntPoly) -> SturmChain:
    if f.degree < 1:
        return SturmChain((f,))
    chain = [f, f.derivative()]
    while chain[-1].degree > 0:
        a = [Fraction(c) for c in chain[-2].coeffs]
        b = [Fraction(c) for c in chain[-1].coeffs]
        r = _rational_remainder(a, b)
        if not r:
            break
        chain.append(-_positive_primitive(r))
    return SturmChain(tuple(chain))


def _sign_at_endpoint(p: IntPoly, x: Endpoint) -> int:
    if isinstance(x, float) and math.isinf(x):
        s = (p.leading > 0) - (p.leading < 0)
        if x < 0 and p.degree % 2:
            s = -s
        return s
    return p.sign_at(Fraction(x))


def count_roots_in(
    f: IntPoly, lo: Endpoint, hi: Endpoint, chain: SturmChain | None = None
) -> int:
    """Number of distinct real roots of f in (lo, hi]; endpoints may be +-inf.

    Raises NonSquarefree when f has a repeated root.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi})")
    chain = chain or sturm_chain(f)
    if not chain.squarefree():
        raise NonSquarefree(f"gcd(f, f') has degree {chain.gcd.degree}")
    return chain.variations(lo) - chain.variations(hi)


@dataclass(frozen=True)
class PositivityReport:
    """Outcome of the analytic part of the membership test for F."""

    degree: int
    monic: bool
    squarefree: bool
    positive_roots: int | None
    ok: bool
    diagnostic: str = ""


def positivity_report(f: IntPoly) -> PositivityReport:
    """Check monic, squarefree and all roots real and positive (not irreducibility)."""
    if f.degree < 1:
        raise ValueError("degree must be at least 1")
    monic = f.is_monic()
    chain = sturm_chain(f)
    if not chain.squarefree():
        return PositivityReport(f.degree, monic, False, None, False, "NonSquarefree")
    pos = count_roots_in(f, 0, math.inf, chain)
    ok = monic and pos == f.degree
    diag = "" if ok else ("not monic" if not monic else f"{pos} of {f.degree} roots positive")
    return PositivityReport(f.degree, monic, True, pos, ok, diag)


def is_totally_positive(f: IntPoly) -> bool:
    return positivity_report(f).ok


def root_bound(f: IntPoly) -> int:
    """Power of two strictly above the Cauchy bound 1 + max|c_i / c_n|."""
    lc = abs(f.leading)
    b = 1 + max(-(-abs(c) // lc) for c in f.coeffs[:-1]) if f.degree else 1
    return 1 << b.bit_length()


def isolate_roots(
    f: IntPoly, lo: Endpoint = 0, hi: Endpoint | None = None
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint half-open intervals (a, b], one per real root of f in (lo, hi]."""
    chain = sturm_chain(f)
    if not chain.squarefree():
        raise NonSquarefree(f"gcd(f, f') has degree {chain.gcd.degree}")
    hi = Fraction(root_bound(f)) if hi is None else Fraction(hi)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(Fraction(lo), hi, chain.variations(Fraction(lo)) - chain.variations(hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        vm = chain.variations(m)
        stack.append((m, b, vm - chain.variations(b)))
        stack.append((a, m, chain.variations(a) - vm))
    return sorted(out)


def refine_root(
    f: IntPoly, interval: tuple[Fraction, Fraction], rel_tol: float = 1e-15
) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval (a, b] by sign bisection until b - a <= rel_tol * b."""
    a, b = interval
    if f.sign_at(b) == 0:
        return b, b
    sb = f.sign_at(b)
    tol = Fraction(rel_tol)
    while b - a > tol * abs(b):
        m = (a + b) / 2
        sm = f.sign_at(m)
        if sm == 0:
            return m, m
        if sm == sb:
            b = m
        else:
            a = m
    return a, b


def positive_root_enclosures(f: IntPoly, rel_tol: float = 1e-15) -> list[tuple[Fraction, Fraction]]:
    return [refine_root(f, iv, rel_tol) for iv in isolate_roots(f, 0)]


def certified_log_discriminant_lower(enclosures: Sequence[tuple[Fraction, Fraction]]) -> float | None:
    """Rigorous lower bound for sum_{i<j} log (x_i - x_j)^2, or None if enclosures overlap.

    The bound is computed exactly in rationals and only rounded at the end.
    """
    ivs = sorted(enclosures)
    num, den = 1, 1
    for i in range(len(ivs)):
        for j in range(i + 1, len(ivs)):
            gap = ivs[j][0] - ivs[i][1]
            if gap <= 0:
                return None
            num *= gap.numerator ** 2
            den *= gap.denominator ** 2
    return _log_fraction_floor(num, den)


def _log_fraction_floor(num: int, den: int) -> float:
    # math.log on huge ints is accurate to ~1 ulp; shave a relative 1e-12 for safety
    v = math.log(num) - math.log(den)
    return v - 1e-12 * max(1.0, abs(v))


# --------------------------------------------------------------------------
# corpus format


_TOKEN = re.compile(r"\S+")
_INT = re.compile(r"[+-]?\d+\Z")


def parse_poly(text: str, line: int | None = None) -> IntPoly:
    """Parse "c_0 c_1 ... c_n" (constant first) into an IntPoly."""
    coeffs = []
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if not _INT.match(tok):
            raise ParseError(f"not an integer: {tok!r}", offset=m.start(), line=line)
        coeffs.append(int(tok))
    if not coeffs:
        raise ParseError("empty polynomial", offset=0, line=line)
    if len(coeffs) > 1 and coeffs[-1] == 0:
        raise ParseError("leading coefficient is zero", offset=len(text.rstrip()) - 1, line=line)
    return IntPoly(tuple(coeffs))


def serialize_poly(f: IntPoly) -> str:
    return " ".join(str(c) for c in f.coeffs)


def iter_corpus(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield (line number, content) for non-blank, non-comment lines."""
    for lineno, raw in enumerate(lines, 1):
        text = raw.strip()
        if text and not text.startswith("#"):
            yield lineno, text


def read_corpus(lines: Iterable[str]) -> list[IntPoly]:
    return [parse_poly(text, line=lineno) for lineno, text in iter_corpus(lines)]


def write_corpus(polys: Iterable[IntPoly], header: str | None = None) -> str:
    out = [f"# {header}"] if header else []
    out.extend(serialize_poly(f) for f in polys)
    return "\n".join(out) + "\n"
