from fractions import Fraction

import pytest

from tropbit.newton import PlanePolynomial

# The running example quartic used throughout: all coefficients are single
# powers of t (one with factor 3), its subdivision is a unimodular
# triangulation, and it has 7 bitangent classes with 4 real lifts in total.
BIGQ_COEFFS = {
    (4, 0): "1*t^11",
    (3, 1): "3*t^4",
    (2, 2): "1*t^3",
    (1, 3): "1*t^5",
    (0, 4): "1*t^15",
    (3, 0): "1*t^8",
    (2, 1): "1",
    (1, 2): "1",
    (0, 3): "1*t",
    (2, 0): "1*t^6",
    (1, 1): "1",
    (0, 2): "1*t^3",
    (1, 0): "1*t^5",
    (0, 1): "1*t^7",
    (0, 0): "1*t^13",
}


@pytest.fixture(scope="session")
def bigq():
    return PlanePolynomial(BIGQ_COEFFS)


def frac_point(x, y):
    return (Fraction(x), Fraction(y))
