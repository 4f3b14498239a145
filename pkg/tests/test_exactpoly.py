from fractions import Fraction
from pathlib import Path

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from trace_atlas.errors import NegativeCoefficient, NonSquarefree, ParseError
from trace_atlas.exactpoly import (
    IntPoly,
    binomial,
    certified_log_discriminant_lower,
    chebyshev_U_half,
    chebyshev_U_half_recurrence,
    compose_shift,
    count_roots_in,
    is_totally_positive,
    isolate_roots,
    parse_poly,
    positive_root_enclosures,
    positivity_report,
    read_corpus,
    refine_root,
    serialize_poly,
    sturm_chain,
)

FIXTURES = Path(__file__).parent / "fixtures"
INF = float("inf")


def P(*coeffs):
    return IntPoly(coeffs)


def pascal(rows):
    tri = [[1]]
    for _ in range(rows):
        last = tri[-1]
        tri.append([1] + [a + b for a, b in zip(last, last[1:])] + [1])
    return tri


class TestBinomial:
    @pytest.mark.parametrize("n,k,want", [(5, 0, 1), (4, 4, 1), (6, 2, 15)])
    def test_examples(self, n, k, want):
        assert binomial(n, k) == want

    def test_matches_pascal(self):
        tri = pascal(60)
        for n, row in enumerate(tri):
            assert [binomial(n, k) for k in range(n + 1)] == row

    @pytest.mark.parametrize("k", [-3, -1, 7, 100])
    def test_out_of_range_is_zero(self, k):
        assert binomial(6, k) == 0

    def test_negative_n(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)


class TestIntPoly:
    def test_strips_leading_zeros(self):
        assert P(1, 2, 0, 0).coeffs == (1, 2)
        assert P(0, 0).is_zero()

    def test_viete_sign_convention(self):
        f = P(-1, 6, -5, 1)  # x^3 - 5x^2 + 6x - 1
        assert f.viete() == [1, 6, 5]
        f.check_viete_positive()

    def test_viete_rejects_nonpositive(self):
        with pytest.raises(NegativeCoefficient):
            P(-2, 0, 1).check_viete_positive()
        with pytest.raises(NegativeCoefficient):
            P(1, 1).check_viete_positive()

    def test_arithmetic(self):
        f, g = P(1, 1), P(-1, 1)
        assert f * g == P(-1, 0, 1)
        assert f + g == P(0, 2)
        assert f - f == P(0)
        assert P(1, 2, 3).derivative() == P(2, 6)

    def test_evaluation_and_sign(self):
        f = P(1, -3, 1)
        assert f(2) == -1
        assert f.sign_at(Fraction(1, 3)) == 1
        assert f.sign_at(Fraction(1)) == -1

    def test_str(self):
        assert str(P(-1, 6, -5, 1)) == "x^3 - 5x^2 + 6x - 1"
        assert str(P(0, 1)) == "x"


class TestChebyshev:
    @pytest.mark.parametrize("m,want", [(0, P(1)), (1, P(0, 1)), (3, P(0, -2, 0, 1))])
    def test_examples(self, m, want):
        assert chebyshev_U_half(m) == want
        assert chebyshev_U_half_recurrence(m) == want

    def test_sum_matches_recurrence(self):
        for m in range(201):
            u = chebyshev_U_half(m)
            assert u == chebyshev_U_half_recurrence(m)
            assert u.degree == m and u.is_monic()

    def test_trigonometric_definition(self):
        # U_m(cos t) = sin((m+1)t)/sin t, so U_m(x/2) at x = 2 cos t
        import math

        t = 0.7
        for m in range(12):
            assert chebyshev_U_half(m)(2 * math.cos(t)) == pytest.approx(
                math.sin((m + 1) * t) / math.sin(t), abs=1e-9
            )


class TestComposeShift:
    @pytest.mark.parametrize(
        "f,s,want",
        [
            (P(0, 0, 1), -2, P(4, -4, 1)),
            (P(-1, 1), 1, P(0, 1)),
            (P(0, -2, 0, 1), -2, P(-4, 10, -6, 1)),
        ],
    )
    def test_examples(self, f, s, want):
        assert compose_shift(f, s) == want

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.integers(-(10**20), 10**20), min_size=1, max_size=51),
        st.integers(-50, 50),
    )
    def test_inverse(self, coeffs, s):
        f = IntPoly(tuple(coeffs))
        assert compose_shift(compose_shift(f, s), -s) == f

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-100, 100), min_size=1, max_size=12), st.integers(-5, 5), st.integers(-9, 9))
    def test_pointwise(self, coeffs, s, x):
        f = IntPoly(tuple(coeffs))
        assert compose_shift(f, s)(x) == f(x + s)


class TestSturm:
    @pytest.mark.parametrize(
        "f,lo,hi,want",
        [
            (P(1, -3, 1), 0, INF, 2),
            (P(1, 0, 1), -INF, INF, 0),
            (P(-2, 0, 1), 0, INF, 1),
            (P(-2, 0, 1), -INF, INF, 2),
            (P(-2, 0, 1), -INF, 0, 1),
        ],
    )
    def test_examples(self, f, lo, hi, want):
        assert count_roots_in(f, lo, hi) == want

    def test_half_open_interval(self):
        f = IntPoly.from_roots([1, 2, 3])
        assert count_roots_in(f, 1, 3) == 2  # (1, 3] holds 2 and 3
        assert count_roots_in(f, 0, 1) == 1

    def test_chain_shape(self):
        f = P(1, -3, 1)
        ch = sturm_chain(f)
        assert ch.polys[0] == f and ch.polys[1] == f.derivative()
        assert ch.squarefree()

    def test_repeated_root(self):
        f = IntPoly.from_roots([1, 1, 2])
        assert sturm_chain(f).gcd.degree == 1
        with pytest.raises(NonSquarefree):
            count_roots_in(f, 0, INF)
        rep = positivity_report(f)
        assert not rep.ok and not rep.squarefree and rep.diagnostic == "NonSquarefree"

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            count_roots_in(P(1, 1), 1, 1)

    @settings(max_examples=60, deadline=None)
    @given(st.sets(st.integers(-30, 30), min_size=1, max_size=10), st.integers(1, 7))
    def test_against_high_precision_roots(self, roots, scale):
        # roots r/scale: integer polynomial prod (scale x - r)
        f = IntPoly((1,))
        for r in roots:
            f = f * IntPoly((-r, scale))
        mp.mp.prec = 256
        try:
            numeric = mp.polyroots(list(reversed(f.coeffs)), maxsteps=200, extraprec=256)
        finally:
            mp.mp.prec = 53
        positive = sum(1 for z in numeric if abs(mp.im(z)) < 1e-30 and mp.re(z) > 1e-30)
        assert count_roots_in(f, 0, INF) == positive
        assert count_roots_in(f, -INF, INF) == len(roots)


class TestTotalPositivity:
    @pytest.mark.parametrize("f,want", [(P(1, -3, 1), True), (P(-2, 0, 1), False), (P(-1, 1), True)])
    def test_examples(self, f, want):
        assert is_totally_positive(f) is want

    def test_root_at_zero_is_not_positive(self):
        assert not is_totally_positive(IntPoly.from_roots([0, 1]))

    def test_non_monic(self):
        rep = positivity_report(P(1, -4, 2))
        assert not rep.ok and rep.positive_roots == 2


class TestRootEnclosures:
    def test_isolation_and_refinement(self):
        f = P(1, -3, 1)
        ivs = isolate_roots(f)
        assert len(ivs) == 2
        import math

        want = sorted([(3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2])
        for (a, b), w in zip(ivs, want):
            lo, hi = refine_root(f, (a, b), 1e-15)
            assert lo <= Fraction(w) * (1 + Fraction(1, 10**14)) and hi >= Fraction(w) * (1 - Fraction(1, 10**14))
            assert float(hi - lo) <= 1e-15 * float(hi)

    def test_exact_rational_root(self):
        f = IntPoly.from_roots([1, 2, 5])
        enc = positive_root_enclosures(f)
        assert [float(a) for a, _ in enc] == pytest.approx([1, 2, 5], rel=1e-14)

    def test_certified_discriminant(self):
        # roots 1, 2, 3: discriminant 4
        enc = positive_root_enclosures(IntPoly.from_roots([1, 2, 3]))
        import math

        lower = certified_log_discriminant_lower(enc)
        assert lower <= math.log(4) and lower == pytest.approx(math.log(4), abs=1e-10)

    def test_overlap_is_not_certified(self):
        assert certified_log_discriminant_lower([(Fraction(0), Fraction(2)), (Fraction(1), Fraction(3))]) is None


class TestCorpusFormat:
    @pytest.mark.parametrize("text,want", [("1 -3 1", P(1, -3, 1)), ("0 1", P(0, 1)), ("  7  ", P(7))])
    def test_parse(self, text, want):
        assert parse_poly(text) == want

    def test_serialize(self):
        assert serialize_poly(P(-1, 6, -5, 1)) == "-1 6 -5 1"

    @pytest.mark.parametrize("text,offset", [("1 x 1", 2), ("1 2.5", 2), ("", 0), ("1 -", 2)])
    def test_parse_errors(self, text, offset):
        with pytest.raises(ParseError) as exc:
            parse_poly(text)
        assert exc.value.offset == offset

    def test_zero_leading(self):
        with pytest.raises(ParseError):
            parse_poly("1 2 0")

    @pytest.mark.parametrize("name", ["siegel_small.txt", "mixed.txt"])
    def test_fixture_round_trip(self, name):
        lines = (FIXTURES / name).read_text().splitlines()
        polys = read_corpus(lines)
        assert polys
        body = [ln.strip() for ln in lines if ln.strip() and not ln.startswith("#")]
        assert [serialize_poly(f) for f in polys] == body
        assert [parse_poly(serialize_poly(f)) for f in polys] == polys

    def test_corpus_line_numbers(self):
        with pytest.raises(ParseError) as exc:
            read_corpus(["# header", "1 2", "", "1 q"])
        assert exc.value.line == 4

    @settings(max_examples=100)
    @given(st.lists(st.integers(-(10**30), 10**30), min_size=1, max_size=20).filter(lambda c: len(c) == 1 or c[-1] != 0))
    def test_round_trip_property(self, coeffs):
        f = IntPoly(tuple(coeffs))
        assert parse_poly(serialize_poly(f)) == f
