"""Re-embedding transforms and the cancellation search."""

import random
from fractions import Fraction

import pytest

from tropbit.errors import NonGenericTie, TruncatedToZero
from tropbit.modify import (
    cancellation_search,
    expected_valuations,
    find_cancellations,
    make_reembedding,
    reembed_I,
    reembed_II,
    star_cancellation_search,
)
from tropbit.newton import PlanePolynomial, format_curve_file
from tropbit.puiseux import TruncatedPuiseux, constant, parse_series, series

SMALL = PlanePolynomial(
    {(0, 0): "1*t", (1, 0): "1 + 1*t^2", (1, 1): "1", (2, 0): "1*t"}
)

# six-term conic-like polynomial whose vertex re-embedding cancels three
# coefficients in each projection
SIX = PlanePolynomial(
    {
        (2, 2): "1*t^3",
        (2, 1): "1",
        (1, 2): "1",
        (2, 0): "1*t",
        (1, 1): "1",
        (0, 2): "1*t^3",
    }
)

SIX_XZ = {
    (4, 0): "1*t^3",
    (3, 1): "-2*t^3",
    (2, 2): "1*t^3",
    (3, 0): "2*t^3",
    (2, 1): "-1 - 2*t^3",
    (1, 2): "1",
    (2, 0): "1*t + 2*t^3",
    (1, 1): "-1 - 2*t^3",
    (0, 2): "1*t^3",
    (1, 0): "2*t^3",
    (0, 1): "-2*t^3",
    (0, 0): "1*t^3",
}

SIX_YZ = {
    (4, 0): "1*t^3",
    (3, 1): "-2*t^3",
    (2, 2): "1*t^3",
    (3, 0): "2*t^3",
    (2, 1): "-1 - 2*t^3",
    (1, 2): "1",
    (2, 0): "1*t + 2*t^3",
    (1, 1): "-1 - 2*t",
    (0, 2): "1*t",
    (1, 0): "2*t",
    (0, 1): "-2*t",
    (0, 0): "1*t",
}


class TestReembedI:
    def test_unit_shift_cancels_x_coefficient(self):
        got = reembed_I(SMALL, 1)
        want = PlanePolynomial(
            {(0, 0): "1*t", (1, 0): "1*t^2", (1, 1): "1", (2, 0): "1*t"}
        )
        assert got == want

    def test_canonical_serialization(self):
        text = format_curve_file(reembed_I(SMALL, 1))
        assert text == (
            "0 0 : 1*t\n"
            "1 0 : 1*t^2\n"
            "1 1 : 1\n"
            "2 0 : 1*t\n"
        )

    def test_generic_residue_keeps_valuation(self):
        re = make_reembedding(SMALL, 2)
        assert re.kind == "I"
        assert re.cancellations == ()
        assert re.q_xz.coefficient(1, 0).valuation() == 0

    def test_pure_line(self):
        m = parse_series("1 + 1*t")
        got = reembed_I(PlanePolynomial({(0, 1): 1}), m)
        assert got == PlanePolynomial({(0, 1): constant(1), (0, 0): -m})


class TestReembedII:
    def test_vertex_substitution_both_projections(self):
        q_xz, q_yz = reembed_II(SIX, 1, 1)
        assert q_xz == PlanePolynomial(SIX_XZ)
        assert q_yz == PlanePolynomial(SIX_YZ)

    def test_trivial_line_argument(self):
        q_xz, q_yz = reembed_II(PlanePolynomial({(0, 1): 1}), 1, 1)
        assert q_xz == PlanePolynomial({(0, 1): 1, (1, 0): -1, (0, 0): -1})
        assert q_yz == PlanePolynomial({(1, 0): 1})

    def test_evaluation_commutes_with_substitution(self):
        rng = random.Random(41)
        for _ in range(25):
            support = [(i, j) for i in range(3) for j in range(3)]
            rng.shuffle(support)
            q = PlanePolynomial(
                {
                    (i, j): series((rng.randint(0, 2), Fraction(rng.randint(1, 5), 2)))
                    for i, j in support[: rng.randint(2, 6)]
                }
            )
            n = series((0, rng.randint(1, 3)), (1, rng.randint(-2, 2)), order=8)
            m = series((0, rng.randint(1, 3)), (2, rng.randint(-2, 2)), order=8)
            x0 = series((0, rng.randint(1, 2)), (1, 1))
            y0 = series((0, rng.randint(1, 2)))
            q_xz, q_yz = reembed_II(q, n, m)
            z0 = y0 + n * x0 + m
            # truncated line coefficients flow through, so compare to fixed depth
            direct = q.evaluate(x0, y0).truncate(6)
            assert q_xz.evaluate(x0, z0).truncate(6) == direct
            assert q_yz.evaluate(y0, z0).truncate(6) == direct


class TestExpectedValuations:
    def test_downward_spread(self):
        got = expected_valuations(SMALL, "I")
        assert got == {
            (0, 0): Fraction(1),
            (1, 0): Fraction(0),
            (1, 1): Fraction(0),
            (2, 0): Fraction(1),
        }
        assert find_cancellations(SMALL, reembed_I(SMALL, 1), "I") == ((1, 0),)

    def test_vertex_spread_cancellations(self):
        q_xz, q_yz = reembed_II(SIX, 1, 1)
        assert find_cancellations(SIX, q_xz, "xz") == ((1, 0), (2, 0), (3, 0))
        assert find_cancellations(SIX, q_yz, "yz") == ((1, 0), (2, 0), (3, 0))

    def test_constant_polynomial(self):
        q = PlanePolynomial({(0, 0): "1*t^2"})
        assert expected_valuations(q, "I") == {(0, 0): Fraction(2)}
        assert find_cancellations(q, reembed_I(q, 1), "I") == ()

    def test_actual_never_beats_bound(self):
        rng = random.Random(99)
        for _ in range(40):
            support = [(i, j) for i in range(3) for j in range(3)]
            rng.shuffle(support)
            q = PlanePolynomial(
                {
                    (i, j): series((Fraction(rng.randint(0, 3)), rng.randint(1, 4)))
                    for i, j in support[: rng.randint(3, 7)]
                }
            )
            n = series((0, rng.randint(1, 3)), (1, rng.randint(-3, 3)), order=8)
            m = series((0, rng.randint(1, 3)), (1, rng.randint(-3, 3)), order=8)
            q_xz, q_yz = reembed_II(q, n, m)
            for kind, proj in (("xz", q_xz), ("yz", q_yz)):
                for key, bound in expected_valuations(q, kind).items():
                    v = proj.coefficient(*key).valuation()
                    assert v is None or v >= bound, (kind, key, v, bound)


class TestCancellationSearch:
    def test_single_step(self):
        re = cancellation_search(SMALL, 1, Fraction(1))
        assert re.m == constant(1)
        assert re.q_xz.coefficient(1, 0).valuation() == 2
        assert re.cancellations == ((1, 0),)

    def test_two_steps(self):
        q = PlanePolynomial(
            {(0, 0): "1*t", (1, 0): "1 + 1*t + 1*t^2", (1, 1): "1", (2, 0): "1*t"}
        )
        re = cancellation_search(q, 1, Fraction(1))
        assert re.m == series((0, 1), (1, 1))
        assert re.q_xz.coefficient(1, 0).valuation() == 2

    def test_missing_linear_row_is_a_tie(self):
        q = PlanePolynomial({(0, 0): "1*t", (1, 0): "1 + 1*t^2", (2, 0): "1*t"})
        with pytest.raises(NonGenericTie):
            cancellation_search(q, 1, Fraction(1))

    def test_degenerate_derivative_is_a_tie(self):
        q = PlanePolynomial(
            {
                (0, 0): "1*t",
                (1, 0): "1 + 1*t",
                (1, 1): "2",
                (1, 2): "1",
                (2, 0): "1*t",
            }
        )
        with pytest.raises(NonGenericTie):
            cancellation_search(q, 1, Fraction(3), start=1)

    def test_truncation_runs_out(self):
        q = PlanePolynomial(
            {
                (0, 0): "1*t",
                (1, 0): "1 + 1*t^2 + O(t^3)",
                (1, 1): "1",
                (2, 0): "1*t",
            }
        )
        with pytest.raises(TruncatedToZero):
            cancellation_search(q, 1, Fraction(5))


class TestStarSearch:
    # vertex triangle (1,1),(1,2),(2,1) with shortest adjacent edge 1 and
    # the other two edges of lengths 2 and 3
    Q = PlanePolynomial(
        {
            (1, 2): "1",
            (1, 1): "2",
            (2, 1): "1 + 1*t",
            (1, 0): "3*t",
            (0, 2): "1*t^2",
            (2, 2): "1*t^3",
        }
    )

    def test_reaches_both_targets(self):
        re = star_cancellation_search(
            self.Q, 1, Fraction(3, 2), 3, Fraction(2), 1, 2
        )
        assert re.kind == "II"
        assert re.n == series((0, 1), (1, 1))
        assert re.m == series((0, 2), (1, Fraction(-3, 2)))
        low = re.q_xz.coefficient(1, 0).valuation()
        high = re.q_xz.coefficient(3, 0).valuation()
        assert low is not None and low > Fraction(3, 2)
        assert high is not None and high > Fraction(2)
        # middle column keeps the shortest-edge valuation, tangency rows stay unit
        assert re.q_xz.coefficient(2, 0).valuation() == 1
        assert re.q_xz.coefficient(1, 1).valuation() == 0
        assert re.q_xz.coefficient(2, 1).valuation() == 0

    def test_degenerate_start_is_a_tie(self):
        with pytest.raises(NonGenericTie):
            star_cancellation_search(
                self.Q, 1, Fraction(3, 2), 3, Fraction(2), 1, 5
            )
