import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fbb.errors import BracketError, DomainError, NumericError, RangeError
from fbb.numerics import (EULER_GAMMA, QuadratureSpec, bernoulli, bernoulli_exact, catalan,
                          circle_mean, complex_cot, complex_csc2, digamma, find_root,
                          integrate, minimize_1d, zeta_even)


def test_bernoulli_known_values():
    assert bernoulli_exact(0) == 1
    assert bernoulli_exact(1) == Fraction(-1, 2)
    assert bernoulli_exact(2) == Fraction(1, 6)
    assert bernoulli_exact(12) == Fraction(-691, 2730)
    assert bernoulli_exact(7) == 0
    assert bernoulli(4) == pytest.approx(-1 / 30, rel=1e-15)


def test_bernoulli_range():
    with pytest.raises(RangeError):
        bernoulli_exact(61)
    with pytest.raises(RangeError):
        bernoulli_exact(-1)


@pytest.mark.parametrize("m", list(range(1, 31)))
def test_zeta_even_against_mpmath(m):
    assert zeta_even(m) == pytest.approx(float(mpmath.zeta(2 * m)), rel=1e-14)


def test_zeta_even_closed_forms():
    assert zeta_even(1) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
    assert zeta_even(2) == pytest.approx(math.pi ** 4 / 90, rel=1e-15)
    with pytest.raises(RangeError):
        zeta_even(31)
    with pytest.raises(RangeError):
        zeta_even(0)


def test_catalan():
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    assert catalan(30) == math.comb(60, 30) // 31
    with pytest.raises(RangeError):
        catalan(31)


@pytest.mark.parametrize("z", [1.0, 0.5, 2.5 + 1j, -0.5 + 0.3j, 12.0 - 7j, 1e-3 + 1e-3j,
                               -3.7, 0.25 + 20j])
def test_digamma_against_mpmath(z):
    ref = complex(mpmath.digamma(z))
    assert abs(digamma(z) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_digamma_special_values():
    assert digamma(1.0).real == pytest.approx(-EULER_GAMMA, abs=1e-15)
    assert digamma(0.5).real == pytest.approx(-EULER_GAMMA - 2 * math.log(2), abs=1e-14)
    for pole in (0.0, -1.0, -7.0):
        with pytest.raises(DomainError):
            digamma(pole)


@given(st.floats(-30, 30), st.floats(-60, 60))
@settings(max_examples=200, deadline=None)
def test_cot_matches_definition(x, y):
    w = complex(x, y)
    if abs(cmath.sin(w)) < 1e-6:
        return
    ref = complex(mpmath.cot(mpmath.mpc(x, y)))
    assert abs(complex_cot(w) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_cot_large_imaginary_stays_finite():
    assert complex_cot(1 + 400j) == pytest.approx(-1j, abs=1e-12)
    assert complex_cot(1 - 400j) == pytest.approx(1j, abs=1e-12)
    assert abs(complex_csc2(2 + 400j)) < 1e-300
    with pytest.raises(DomainError):
        complex_cot(0.0)


def test_csc2_against_mpmath():
    for w in (0.3 + 0.2j, 2.0 - 1.0j, 5 + 25j, -4 - 30j):
        ref = complex(1 / mpmath.sin(w) ** 2)
        assert abs(complex_csc2(w) - ref) <= 1e-12 * max(abs(ref), 1e-300)


def test_find_root_examples():
    assert find_root(lambda x: x * x - 2, 0, 2) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert find_root(math.cos, 1, 2) == pytest.approx(math.pi / 2, abs=1e-12)
    with pytest.raises(BracketError):
        find_root(lambda x: x * x + 1, -1, 1)
    with pytest.raises(NumericError):
        find_root(lambda x: math.nan, 0, 1)


@given(st.floats(-50, 50), st.floats(0.01, 10))
@settings(max_examples=100, deadline=None)
def test_find_root_cubic(root, width):
    f = lambda x: (x - root) ** 3 + (x - root)
    x = find_root(f, root - width, root + 2 * width, tol=1e-12)
    assert abs(x - root) < 1e-9


def test_minimize_1d():
    x, fx = minimize_1d(lambda t: (t - 1.3) ** 2 + 2, 0, 3)
    assert x == pytest.approx(1.3, abs=1e-6)
    assert fx == pytest.approx(2.0, abs=1e-12)
    x, _ = minimize_1d(lambda t: -math.sin(t), 0, math.pi)
    assert x == pytest.approx(math.pi / 2, abs=1e-6)


def test_quadrature():
    assert integrate(math.sin, 0, math.pi) == pytest.approx(2.0, abs=1e-12)
    semicircle = lambda x: np.sqrt(np.clip(4 - x * x, 0, None)) / (2 * np.pi)
    value = integrate(semicircle, -2, 2, QuadratureSpec(200001), vectorized=True)
    assert value == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(ValueError):
        QuadratureSpec(4)
    with pytest.raises(ValueError):
        QuadratureSpec(65, "circle-trapezoid")


def test_circle_mean_extracts_coefficient():
    # constant Laurent coefficient of e^w / w^2 is the w^2 coefficient of e^w
    value = circle_mean(lambda w: cmath.exp(w) / w ** 2, 1.0, 64)
    assert value == pytest.approx(0.5, abs=1e-14)
    with pytest.raises(ValueError):
        circle_mean(lambda w: w, 1.0, 8)
