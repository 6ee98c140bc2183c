import math

import pytest

from fbb.edge import (EdgeReport, edge_implicit, edge_kmin, edge_variational, levy_area_edge,
                      levy_area_equation, square_norm_edge, square_norm_equation, theta,
                      tilt_state)
from fbb.errors import DomainError, NumericError, RangeError
from fbb.laws import (Commutator, FreeConv, FreePoisson, LevyArea, Scaled, Semicircle,
                      SquareNorm, TensorSignature)

# Golden values frozen from a 40-digit mpmath oracle: critical points of K by
# findroot on mpmath.diff(K), the sup of the tilted objective by golden
# section on mpmath sums of 3000 cumulants, and the implicit equations by
# mpmath.findroot.  All three agree to more than 15 digits.
GAMMA_RIGHT = 0.47528202466400899817
GAMMA_LEFT = 0.04166769177359143966
GAMMA_M_STAR = 1.75170813191106333294
GAMMA_M_STAR_LEFT = 0.59992909188767301650
LEVY_EDGE = 3.94601388318158460761
LEVY_M_STAR = 2.33712555896981225108
COMMUTATOR_EDGE = math.sqrt((11 + 5 * math.sqrt(5)) / 2)


def test_theta():
    assert theta(2.0) == pytest.approx(2 * math.log(2), rel=1e-15)
    with pytest.raises(DomainError):
        theta(1.0)


@pytest.mark.parametrize("method", [edge_kmin, edge_variational, edge_implicit])
def test_commutator_edge(method):
    rep = method(Commutator())
    assert rep.right == pytest.approx(COMMUTATOR_EDGE, abs=1e-9)
    assert rep.left == -rep.right


def test_semicircle_variational_is_exact():
    rep = edge_variational(Semicircle(2.0))
    assert rep.right == pytest.approx(2.0, abs=1e-9)
    state = tilt_state(Semicircle(2.0), 0.7)
    assert state.mean == pytest.approx(2.0, abs=1e-14)
    assert state.objective == pytest.approx(math.log(2), abs=1e-12)
    assert edge_kmin(Semicircle(3.0)).right == pytest.approx(3.0, abs=1e-9)


def test_square_norm_three_ways():
    k, v, i = edge_kmin(SquareNorm()), edge_variational(SquareNorm()), edge_implicit(SquareNorm())
    for rep in (k, v, i):
        assert rep.right == pytest.approx(GAMMA_RIGHT, rel=1e-9)
    assert k.left == pytest.approx(GAMMA_LEFT, rel=1e-9)
    assert i.left == pytest.approx(GAMMA_LEFT, rel=1e-9)
    assert v.left is None
    assert i.diagnostics["m_star"] == pytest.approx(GAMMA_M_STAR, rel=1e-9)
    assert i.diagnostics["m_star_left"] == pytest.approx(GAMMA_M_STAR_LEFT, rel=1e-8)
    assert v.diagnostics["mean"] == pytest.approx(GAMMA_M_STAR, rel=1e-6)
    assert 0 < k.left < k.right < 1


def test_levy_area_three_ways():
    reps = [edge_kmin(LevyArea()), edge_variational(LevyArea()), edge_implicit(LevyArea())]
    for rep in reps:
        assert rep.right == pytest.approx(LEVY_EDGE, rel=1e-9)
        assert rep.left == -rep.right
    assert reps[2].diagnostics["m_star"] == pytest.approx(LEVY_M_STAR, rel=1e-9)
    assert reps[1].diagnostics["mean"] == pytest.approx(LEVY_M_STAR, rel=1e-6)


def test_implicit_equations_vanish_at_roots():
    assert abs(square_norm_equation(GAMMA_M_STAR)) < 1e-12
    assert abs(levy_area_equation(LEVY_M_STAR)) < 1e-12
    assert square_norm_edge(GAMMA_M_STAR) == pytest.approx(GAMMA_RIGHT, rel=1e-12)
    assert levy_area_edge(LEVY_M_STAR) == pytest.approx(LEVY_EDGE, rel=1e-12)
    # the jump at m = 1 is not a root
    assert abs(square_norm_equation(1 + 1e-6)) > 1e-3


def test_printed_reading_disagrees():
    rep = edge_implicit(SquareNorm(), reading="printed")
    assert abs(rep.right - GAMMA_RIGHT) > 0.01
    assert len(rep.diagnostics["roots"]) >= 1


def test_free_poisson_and_scaling():
    assert edge_variational(FreePoisson()).right == pytest.approx(4.0, abs=1e-8)
    assert edge_kmin(Scaled(SquareNorm(), 2.0)).right == pytest.approx(2 * GAMMA_RIGHT, rel=1e-9)
    # free sum of two semicircles of variance 1: semicircle of variance 2
    rep = edge_kmin(FreeConv(Semicircle(2.0), Semicircle(2.0)))
    assert rep.right == pytest.approx(2 * math.sqrt(2), rel=1e-9)


def test_unsupported_laws():
    with pytest.raises(DomainError):
        edge_implicit(Semicircle())
    with pytest.raises((DomainError, NumericError)):
        edge_kmin(TensorSignature())


def test_signature_variational_edge_needs_more_cumulants():
    # 24 cumulants cannot certify the tail of the tilted series
    with pytest.raises((RangeError, NumericError)):
        edge_variational(TensorSignature())
    with pytest.raises(NumericError):
        edge_variational(TensorSignature(), horizon=24)


def test_report_validation():
    with pytest.raises(NumericError):
        EdgeReport("x", "kmin", 1.0, 2.0)
    d = EdgeReport("x", "kmin", 2.0, 1.0, {"a": 1}).as_dict()
    assert d["right"] == 2.0 and d["diagnostics"] == {"a": 1}
