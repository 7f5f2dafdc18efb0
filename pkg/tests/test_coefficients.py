from fractions import Fraction

import numpy as np
import pytest

from nnjsd import ValidationError, series_coefficients

ALPHAS = np.linspace(-1.0, 1.0, 64)


def c(i):
    return Fraction((-1) ** (i + 1), i)


def recurrence(i, a):
    """Coefficient of eps^(i+1) from regrouping the three log expansions."""
    return (c(i) + c(i + 1)) * ((-1) ** i * a - 2 * a ** (i + 1) + a + 1 + (-1) ** (i + 1))


def recurrence_float(i, a):
    ci = (-1) ** (i + 1) / i
    cj = (-1) ** (i + 2) / (i + 1)
    return (ci + cj) * ((-1) ** i * a - 2 * a ** (i + 1) + a + 1 + (-1) ** (i + 1))


def test_alpha_zero():
    b = series_coefficients(0.0, 4).b
    assert list(b) == [1.0, 0.0, 1 / 6, 0.0]
    assert not np.signbit(b).any()


def test_alpha_half_third_term():
    assert series_coefficients(0.5, 3)[3] == 0.15625
    assert Fraction(series_coefficients(0.5, 3)[3]) == recurrence(3, Fraction(1, 2))


@pytest.mark.parametrize("alpha", ALPHAS)
def test_first_coefficient(alpha):
    assert series_coefficients(alpha, 1)[1] == pytest.approx(1 - alpha**2, abs=1e-15)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_matches_exact_rational_recurrence(alpha):
    a = Fraction(float(alpha))
    b = series_coefficients(alpha, 30)
    for i in range(1, 31):
        exact = recurrence(i, a)
        if exact == 0:
            assert b[i] == 0.0
        else:
            assert abs(Fraction(b[i]) - exact) <= abs(exact) * Fraction(1, 10**14)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_matches_float_recurrence(alpha):
    b = series_coefficients(alpha, 30)
    for i in range(1, 31):
        r = recurrence_float(i, float(alpha))
        assert b[i] == pytest.approx(r, rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_ratio_identity(alpha):
    b = series_coefficients(alpha, 40)
    for i in range(1, 21):
        if b[2 * i - 1] != 0.0:
            assert abs(b[2 * i] / b[2 * i - 1] + (2 * i - 1) / (2 * i + 1) * alpha) <= 1e-14


@pytest.mark.parametrize("alpha", ALPHAS)
def test_signs_and_bound(alpha):
    b = series_coefficients(alpha, 30)
    for i in range(1, 31):
        assert abs(b[i]) <= 4 / (i * (i + 1))
        if i % 2:
            assert b[i] >= 0.0
        else:
            assert np.sign(b[i]) == -np.sign(alpha * (1 - alpha**i))


@pytest.mark.parametrize("alpha", [1 - 2**-52, -(1 - 2**-53), 1 - 1e-12, 0.999999])
def test_even_partner_never_outweighs_odd_near_unit_alpha(alpha):
    b = series_coefficients(alpha, 64)
    for i in range(1, 33):
        assert abs(b[2 * i]) <= b[2 * i - 1]


def test_unit_alpha_is_all_zero():
    for a in (-1.0, 1.0):
        assert not series_coefficients(a, 20).b.any()


@pytest.mark.parametrize("alpha,order", [(1.0001, 3), (-2, 3), (0.5, 0), (0.5, -3)])
def test_rejects(alpha, order):
    with pytest.raises(ValidationError):
        series_coefficients(alpha, order)


def test_one_based_indexing():
    b = series_coefficients(0.3, 3)
    with pytest.raises(IndexError):
        b[0]
    with pytest.raises(IndexError):
        b[4]
