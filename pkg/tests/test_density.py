import math

import numpy as np
import pytest

from fbb.density import (boundary_csv, chebyshev_t_grid, density_csv, density_table,
                         stieltjes_density, table_cdf, table_moment, trace_boundary)
from fbb.errors import DomainError, RangeError
from fbb.laws import Commutator, FreePoisson, LevyArea, SquareNorm, TensorSignature

# r(3 pi/2)/pi from an mpmath root of 2/r = pi coth(pi r)
LEVY_PHI_ZERO = 0.19403088212362070638


@pytest.mark.parametrize("name", ["gamma", "levy-area", "commutator", "semicircle"])
def test_mass(tables, name):
    table = tables(name)
    assert 0.999 <= table.meta["mass"] <= 1.001
    assert len(table) >= 400
    assert all(a < b for a, b in zip(table.x, table.x[1:]))
    assert min(table.phi) > 0


def test_semicircle_table_is_exact(tables):
    table = tables("semicircle")
    x = np.asarray(table.x)
    ref = np.sqrt(4 - x * x) / (2 * math.pi)
    assert np.max(np.abs(np.asarray(table.phi) - ref)) < 1e-12
    assert table.right == pytest.approx(2.0, abs=1e-8)


def test_gamma_moments(tables):
    table = tables("gamma")
    mean = table_moment(table, 1)
    assert mean == pytest.approx(1 / 6, abs=1e-4)
    var = table_moment(table, 2) - mean ** 2
    assert var == pytest.approx(1 / 90, abs=1e-5)
    assert 0 < table.left < table.right < 1


def test_levy_variance_and_centre(tables):
    table = tables("levy-area")
    assert table_moment(table, 2) == pytest.approx(math.pi ** 2 / 3, abs=5e-3)
    assert abs(table_moment(table, 1)) < 1e-8
    phi0 = float(np.interp(0.0, table.x, table.phi))
    assert phi0 == pytest.approx(LEVY_PHI_ZERO, abs=1e-4)
    row = trace_boundary(LevyArea(), [1.5 * math.pi]).rows[0]
    assert abs(row.x) < 1e-12
    assert row.r / math.pi == pytest.approx(LEVY_PHI_ZERO, abs=1e-12)
    assert table.right == pytest.approx(3.946013883181584, abs=1e-6)


def test_symmetric_tables(tables):
    for name in ("levy-area", "commutator"):
        t = tables(name)
        assert t.left == -t.right
        x, phi = np.asarray(t.x), np.asarray(t.phi)
        assert np.max(np.abs(x + x[::-1])) < 1e-6
        assert np.max(np.abs(phi - phi[::-1])) < 1e-6


@pytest.mark.parametrize("name,law", [("gamma", SquareNorm()), ("levy-area", LevyArea()),
                                      ("commutator", Commutator())])
def test_table_matches_stieltjes(tables, name, law):
    table = tables(name)
    n = len(table)
    for i in np.linspace(0.05 * n, 0.95 * n, 7).astype(int):
        assert abs(table.phi[i] - stieltjes_density(law, table.x[i])) < 1e-4


def test_boundary_rows_solve_im_k():
    curve = trace_boundary(SquareNorm(), chebyshev_t_grid(20))
    assert len(curve) == 20
    for row in curve.rows:
        assert abs(row.im_residual) < 1e-9
    text = boundary_csv(curve)
    assert text.splitlines()[0] == "t,r,x,im_residual"
    assert len(text.splitlines()) == 21


def test_free_poisson_curve_is_a_line():
    ts = np.linspace(1.5 * math.pi + 0.05, 2 * math.pi - 0.05, 15)
    curve = trace_boundary(FreePoisson(), ts)
    for row in curve.rows:
        assert row.r * math.cos(row.t) == pytest.approx(0.5, abs=1e-9)
    with pytest.raises(DomainError):
        density_table(FreePoisson())


def test_small_table_not_validated():
    t = density_table(SquareNorm(), 7)
    assert len(t) == 7 and t.meta["validated"] is False
    assert density_csv(t).splitlines()[0] == "x,phi"


def test_errors():
    with pytest.raises(DomainError):
        density_table(TensorSignature())
    with pytest.raises(RangeError):
        chebyshev_t_grid(1)
    with pytest.raises(DomainError):
        trace_boundary(SquareNorm(), [math.pi, 4.0])
    with pytest.raises(ValueError):
        trace_boundary(SquareNorm(), [4.5, 4.0])
    with pytest.raises(DomainError):
        stieltjes_density(SquareNorm(), 0.2, eps=0.1)


def test_cdf(tables):
    t = tables("commutator")
    cdf = table_cdf(t, [t.left - 1, 0.0, t.right + 1])
    assert cdf[0] == 0.0
    assert cdf[1] == pytest.approx(0.5, abs=1e-4)
    assert cdf[2] == pytest.approx(1.0, abs=1e-3)
