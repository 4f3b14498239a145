import csv
import io
import math
from fractions import Fraction

import pytest

from trace_atlas.errors import NegativeCoefficient, NotOddPrime
from trace_atlas.exactpoly import IntPoly, binomial, is_totally_positive
from trace_atlas.siegel import (
    absolute_trace,
    gmj_closed_form,
    gmj_recurrence_table,
    is_odd_prime,
    normalized_points,
    odd_primes_upto,
    points_csv,
    siegel_poly,
    siegel_poly_closed_form,
    siegel_poly_constructive,
)

G3, G5, G7 = IntPoly((-1, 1)), IntPoly((1, -3, 1)), IntPoly((-1, 6, -5, 1))


def test_primality():
    assert odd_primes_upto(30) == [3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(odd_primes_upto(101)) == 25
    assert not is_odd_prime(2) and not is_odd_prime(1) and not is_odd_prime(91)


@pytest.mark.parametrize("p,want", [(3, G3), (5, G5), (7, G7)])
def test_both_constructions(p, want):
    assert siegel_poly_constructive(p).poly == want
    assert siegel_poly_closed_form(p).poly == want


def test_p5_roots_are_shifted_cosines():
    f = siegel_poly(5).poly
    for k in (1, 2):
        assert f(2 + 2 * math.cos(2 * math.pi * k / 5)) == pytest.approx(0, abs=1e-12)


@pytest.mark.parametrize("p", [11, 13, 31])
def test_roots_numerically(p):
    f = siegel_poly_constructive(p).poly
    # g(x) = prod (x - r) over the n shifted cosines
    for x in (0.3, 1.7, 4.2):
        direct = math.prod(x - (2 + 2 * math.cos(2 * math.pi * k / p)) for k in range(1, (p - 1) // 2 + 1))
        assert f(x) == pytest.approx(direct, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("p", [1, 2, 9, 15, -7])
def test_not_odd_prime(p):
    with pytest.raises(NotOddPrime):
        siegel_poly_constructive(p)
    with pytest.raises(NotOddPrime):
        siegel_poly_closed_form(p)


def test_prime_cap():
    with pytest.raises(NotOddPrime):
        siegel_poly(101, cap=97)


def test_siegel_poly_invariants():
    for p in odd_primes_upto(61):
        sp = siegel_poly(p)
        n = sp.n
        assert sp.poly.degree == n and sp.poly.is_monic()
        assert all(sp.poly.coeffs[d] == (-1) ** (n - d) * binomial(n + d, 2 * d) for d in range(n + 1))


class TestGmjTable:
    def test_examples(self):
        t = gmj_recurrence_table(5, 5)
        assert t[0][0] == 1
        assert t[1][0] == -1
        assert t[5][2] == -35

    def test_small_block_by_hand(self):
        # (1+u)/(1+2u-uv+u^2) = 1 - u + uv + u^2 (1 - 3v + v^2) + ...
        t = gmj_recurrence_table(2, 2)
        assert t == [[1, 0, 0], [-1, 1, 0], [1, -3, 1]]

    def test_rows_are_siegel_coefficients(self):
        t = gmj_recurrence_table(30, 30)
        for p in odd_primes_upto(61):
            n = (p - 1) // 2
            assert tuple(t[n][: n + 1]) == siegel_poly(p).poly.coeffs

    def test_closed_form(self):
        assert gmj_closed_form(5, 2) == -35
        assert gmj_closed_form(2, 5) == 0

    def test_bounds(self):
        with pytest.raises(ValueError):
            gmj_recurrence_table(-1, 3)


class TestAbsoluteTrace:
    @pytest.mark.parametrize("p,want", [(5, Fraction(3, 2)), (7, Fraction(5, 3))])
    def test_known_values(self, p, want):
        assert absolute_trace(siegel_poly(p).poly) == want == 2 - Fraction(2, p - 1)

    def test_linear(self):
        assert absolute_trace(G3) == 1

    def test_requires_monic(self):
        with pytest.raises(ValueError):
            absolute_trace(IntPoly((1, 2)))


class TestNormalizedPoints:
    def test_quadratic(self):
        pts = normalized_points(G5)
        assert [(p.c_exact, p.value) for p in pts] == [(Fraction(1, 2), pytest.approx(1.5)), (Fraction(1), pytest.approx(1.0))]

    def test_linear(self):
        (pt,) = normalized_points(G3)
        assert (pt.d, pt.n, pt.c, pt.value) == (1, 1, 1.0, 1.0)

    def test_negative(self):
        with pytest.raises(NegativeCoefficient):
            normalized_points(IntPoly((-2, 0, 1)))

    def test_maclaurin_monotone_and_at_least_one(self):
        for p in odd_primes_upto(401):
            vals = [pt.value for pt in normalized_points(siegel_poly(p).poly)]
            assert all(b <= a * (1 + 1e-10) for a, b in zip(vals, vals[1:]))
            assert min(vals) >= 1 - 1e-12

    def test_huge_coefficients(self):
        # coefficients of g_4001 exceed the double range; logs must stay finite
        pts = normalized_points(siegel_poly(4001).poly)
        assert all(math.isfinite(p.value) for p in pts)
        exact = Fraction(siegel_poly(4001).poly.a(2000 - 1000), binomial(2000, 1000))
        assert pts[999].value == pytest.approx(math.exp(math.log(exact) / 1000), rel=1e-12)


def test_totally_positive_family():
    for p in odd_primes_upto(61):
        assert is_totally_positive(siegel_poly(p).poly)


def test_points_csv():
    rows = [(7, pt) for pt in normalized_points(G7)] + [(5, pt) for pt in normalized_points(G5)]
    text = points_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "p,n,d,c,value"
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert [(r["p"], r["d"]) for r in parsed] == [("5", "1"), ("5", "2"), ("7", "1"), ("7", "2"), ("7", "3")]
    assert parsed[2]["c"] == "0.333333333333"
    assert float(parsed[2]["value"]) == pytest.approx(5 / 3, rel=1e-11)
