"""Ground field and truncated series arithmetic.

The sympy cross-checks use sympy's own Puiseux-free machinery (plain
symbolic expansion) as an independent oracle.
"""

import random
from fractions import Fraction

import pytest

from tropbit.errors import DivisionByZero, NonZeroValuation, ParseError, UnimplementedClosedForm
from tropbit.puiseux import (
    QuadElement,
    TruncatedPuiseux,
    constant,
    format_series,
    ground_sign,
    ground_sqrt,
    parse_series,
    series,
    t_power,
)


class TestQuadElement:
    def test_plain_rational_collapse(self):
        assert QuadElement(3, 0, 5) == QuadElement(3)
        assert QuadElement(2, 3, 1) == QuadElement(5)

    def test_field_axioms_random(self):
        rng = random.Random(11)
        for _ in range(200):
            r = rng.choice([2, 3, 5, -1, -7])
            def el():
                return QuadElement(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                                   Fraction(rng.randint(-9, 9), rng.randint(1, 5)), r)
            x, y, z = el(), el(), el()
            assert (x + y) * z == x * z + y * z
            assert x * y == y * x
            if x:
                assert x * x.inverse() == QuadElement(1)

    def test_mixed_with_fraction(self):
        x = QuadElement(1, 2, 3)
        assert x + Fraction(1, 2) == QuadElement(Fraction(3, 2), 2, 3)
        assert 2 * x == QuadElement(2, 4, 3)
        assert x - x == QuadElement(0)
        assert Fraction(1) / QuadElement(0, 1, 2) == QuadElement(0, Fraction(1, 2), 2)

    def test_distinct_radicals_refused(self):
        with pytest.raises(UnimplementedClosedForm):
            QuadElement(0, 1, 2) + QuadElement(0, 1, 3)

    def test_sign_exact(self):
        # 7 - 4*sqrt(3) = (2 - sqrt(3))^2 > 0 but barely
        assert QuadElement(7, -4, 3).sign() == 1
        assert QuadElement(-7, 4, 3).sign() == -1
        assert QuadElement(7, -5, 2).sign() == -1  # 49 < 50
        assert QuadElement(0, -1, 5).sign() == -1
        assert QuadElement(0).sign() == 0
        with pytest.raises(ValueError):
            QuadElement(1, 1, -1).sign()

    def test_is_real(self):
        assert QuadElement(1, 2, 3).is_real
        assert not QuadElement(1, 2, -3).is_real
        assert QuadElement(1, 0, -3).is_real

    def test_sqrt(self):
        assert ground_sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert ground_sqrt(Fraction(8)) == QuadElement(0, 2, 2)
        s = ground_sqrt(Fraction(-18, 25))
        assert s == QuadElement(0, Fraction(3, 5), -2)
        assert s * s == Fraction(-18, 25)
        s = ground_sqrt(Fraction(7, 12))
        assert s * s == Fraction(7, 12)

    def test_sign_helper(self):
        assert ground_sign(Fraction(-2, 7)) == -1
        assert ground_sign(0) == 0
        assert ground_sign(QuadElement(1, 1, 2)) == 1


class TestSeriesArithmetic:
    def test_valuation_and_residue(self):
        s = series((Fraction(-1, 2), 3), (0, 4), (2, 1))
        assert s.valuation() == Fraction(-1, 2)
        with pytest.raises(NonZeroValuation):
            s.residue()
        assert series((0, 5), (1, 1)).residue() == 5
        with pytest.raises(NonZeroValuation):
            series().residue()

    def test_zero_handling(self):
        z = series()
        assert z.is_exactly_zero()
        assert z.valuation() is None
        tz = series(order=3)
        assert tz.is_zero() and not tz.is_exactly_zero()

    def test_truncation_add(self):
        a = parse_series("1 + 1*t + O(t^2)")
        b = parse_series("1*t + 1*t^3")
        assert (a + b).order == 2
        assert (a + b).coefficient(1) == 2

    def test_truncation_mul(self):
        # ord(s) + val(u) rule, both ways
        s = parse_series("1*t^2 + O(t^5)")
        u = parse_series("1*t^3 + O(t^4)")
        p = s * u
        assert p.order == min(5 + 3, 4 + 2)
        assert p.coefficient(5) == 1
        # cancellation below truncation is honest
        a = parse_series("1 + 1*t + O(t^2)")
        b = parse_series("1 + -1*t + O(t^2)")
        ab = a * b
        assert ab.order == 2 and ab.coefficient(0) == 1 and ab.coefficient(1) == 0

    def test_mul_with_exact_zero(self):
        a = parse_series("1 + O(t^2)")
        z = series()
        assert (a * z).is_exactly_zero()

    def test_pow_matches_repeated_mul(self):
        s = parse_series("1*t^(-1) + 2 + 3*t^(1/2)")
        assert s ** 3 == s * s * s
        assert s ** 0 == constant(1)

    def test_division_round_trip(self):
        s = parse_series("2*t^(-2) + 1*t + 5*t^3")
        u = parse_series("1*t + 1*t^2 + 1*t^4")
        q = (s * u) / u
        for e in (Fraction(-2), Fraction(1), Fraction(3)):
            assert q.coefficient(e) == s.coefficient(e)
        with pytest.raises(DivisionByZero):
            s / series(order=2)

    def test_inverse_truncated(self):
        u = parse_series("1 + 1*t + O(t^3)")
        v = u.inverse()
        assert v.order == 3
        assert v.coefficient(0) == 1 and v.coefficient(1) == -1 and v.coefficient(2) == 1

    def test_shift_rescale(self):
        s = parse_series("1*t + 1*t^2 + O(t^3)")
        assert s.shift(Fraction(1, 2)).valuation() == Fraction(3, 2)
        r = s.rescale(Fraction(1, 2))
        assert r.valuation() == Fraction(1, 2) and r.order == Fraction(3, 2)
        assert s.exponent_denominator() == 1
        assert r.exponent_denominator() == 2

    def test_quad_coefficients_in_series(self):
        root2 = QuadElement(0, 1, 2)
        s = series((0, root2), (1, 1))
        p = s * s
        assert p.coefficient(0) == Fraction(2)
        assert p.coefficient(1) == QuadElement(0, 2, 2)

    def test_sympy_oracle_product(self):
        sympy = pytest.importorskip("sympy")
        t = sympy.Symbol("t")
        rng = random.Random(5)
        for _ in range(25):
            def rand_poly():
                terms = [(Fraction(rng.randint(-3, 6)), Fraction(rng.randint(-5, 5)))
                         for _ in range(4)]
                return TruncatedPuiseux(terms)
            a, b = rand_poly(), rand_poly()
            ours = a * b
            theirs = sympy.expand(
                sum(sympy.Rational(c) * t ** sympy.Rational(e) for e, c in a.terms)
                * sum(sympy.Rational(c) * t ** sympy.Rational(e) for e, c in b.terms))
            for e, c in ours.terms:
                assert theirs.coeff(t, sympy.Rational(e)) == sympy.Rational(c)


class TestLiteralFormat:
    def test_round_trip_canonical(self):
        cases = [
            "0",
            "3",
            "-1/2",
            "1*t",
            "-2/3*t^(7/2)",
            "1*t^(-1) + 3 + -2*t^(1/2)",
            "O(t^2)",
            "5*t^4 + O(t^(11/2))",
        ]
        for text in cases:
            assert format_series(parse_series(text)) == text

    def test_parser_tolerance(self):
        assert parse_series("t^2") == t_power(2)
        assert parse_series("-t") == t_power(1, -1)
        assert parse_series("2 - 3*t") == series((0, 2), (1, -3))
        assert parse_series(" 1/2 * t^( -3/2 ) ") == t_power(Fraction(-3, 2), Fraction(1, 2))
        assert parse_series("1+t+O(t^5)") == series((0, 1), (1, 1), order=5)

    def test_parse_errors(self):
        for bad in ["", "x + 1", "1*t^", "1 + O(t^2) + O(t^3)", "t**2"]:
            with pytest.raises(ParseError):
                parse_series(bad)

    def test_order_absorbs_terms(self):
        s = parse_series("1 + 4*t^3 + O(t^2)")
        assert s == parse_series("1 + O(t^2)")
