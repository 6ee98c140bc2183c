"""
Special functions and small numeric kernels.

Everything here is pure and scalar-oriented: Bernoulli numbers and even zeta
values, Catalan numbers, the complex digamma function, an overflow-safe
complex cotangent, bracketed root finding, golden-section minimisation and
two quadrature rules (composite Simpson on an interval, trapezoid on a
circle).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import BracketError, DomainError, NumericError, RangeError

EULER_GAMMA = 0.57721566490153286060651209008240243

DEFAULT_TOL = 1e-12

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _check_finite(*values) -> None:
    for v in values:
        if not cmath.isfinite(v):
            raise NumericError(f"non-finite input {v!r}")


# ---------------------------------------------------------------------------
# Integer sequences
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * table[j]
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_exact(n: int) -> Fraction:
    """Exact Bernoulli number B_n (convention B_1 = -1/2)."""
    if n < 0 or n > 60:
        raise RangeError(f"bernoulli: n={n} outside 0..60")
    return _bernoulli_table(n)[n]


def bernoulli(n: int) -> float:
    """Bernoulli number B_n, rounded once from the exact rational value."""
    return float(bernoulli_exact(n))


def zeta_even(m: int) -> float:
    """Riemann zeta at the even integer 2m, for 1 <= m <= 30."""
    if m < 1 or m > 30:
        raise RangeError(f"zeta_even: m={m} outside 1..30")
    coeff = (-1) ** (m + 1) * bernoulli_exact(2 * m) / (2 * math.factorial(2 * m))
    return float(coeff) * (2.0 * math.pi) ** (2 * m)


def catalan(n: int) -> int:
    """Catalan number binom(2n, n)/(n+1), for 0 <= n <= 30."""
    if n < 0 or n > 30:
        raise RangeError(f"catalan: n={n} outside 0..30")
    return math.comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# Complex special functions
# ---------------------------------------------------------------------------

_DIGAMMA_COEFFS = tuple(float(bernoulli_exact(2 * k)) / (2 * k) for k in range(1, 8))


def digamma(z: complex) -> complex:
    """
    Digamma function Psi(z) = Gamma'(z)/Gamma(z) for complex z.

    The argument is shifted upward with Psi(z) = Psi(z+1) - 1/z until it lies
    in the half plane Re z >= 10, where the Stirling-type asymptotic series
    through B_14 is accurate to well below 1e-13.
    """
    z = complex(z)
    _check_finite(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise DomainError(f"digamma: pole at z={z.real}")
    shift = 0.0j
    while z.real < 10.0:
        shift -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    series = 0.0j
    power = inv2
    for c in _DIGAMMA_COEFFS:
        series += c * power
        power *= inv2
    return shift + cmath.log(z) - 0.5 / z - series


def complex_cot(w: complex) -> complex:
    """cot(w) that stays finite for large |Im w|; raises at the poles w = k*pi."""
    w = complex(w)
    _check_finite(w)
    if w.imag > 20.0:
        e = cmath.exp(2j * w)
        return -1j * (1.0 + e) / (1.0 - e)
    if w.imag < -20.0:
        e = cmath.exp(-2j * w)
        return 1j * (1.0 + e) / (1.0 - e)
    s = cmath.sin(w)
    if s == 0:
        raise DomainError(f"cot: pole at w={w}")
    return cmath.cos(w) / s


def complex_csc2(w: complex) -> complex:
    """1/sin(w)^2 with the same large-|Im w| protection as complex_cot."""
    w = complex(w)
    _check_finite(w)
    if abs(w.imag) > 20.0:
        # 1/sin^2 = -4 e^{2iw} / (1 - e^{2iw})^2, using the decaying exponential
        e = cmath.exp(2j * w) if w.imag > 0 else cmath.exp(-2j * w)
        return -4.0 * e / (1.0 - e) ** 2
    s = cmath.sin(w)
    if s == 0:
        raise DomainError(f"csc: pole at w={w}")
    return 1.0 / (s * s)


# ---------------------------------------------------------------------------
# Root finding and minimisation
# ---------------------------------------------------------------------------

def _eval_real(f: Callable[[float], float], x: float) -> float:
    y = f(x)
    if isinstance(y, complex):
        y = y.real
    y = float(y)
    if not math.isfinite(y):
        raise NumericError(f"non-finite function value at x={x!r}")
    return y


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float = DEFAULT_TOL,
              maxiter: int = 400) -> float:
    """
    Root of ``f`` inside the bracket ``[lo, hi]``.

    Bisection safeguards secant steps: a secant proposal is used only when it
    falls strictly inside the current bracket and the previous step shrank
    the bracket by at least half; otherwise the midpoint is taken.  Stops when
    the bracket is narrower than ``tol`` or cannot be split further.
    """
    _check_finite(lo, hi, tol)
    if not lo < hi:
        raise BracketError(f"find_root: need lo < hi, got [{lo}, {hi}]")
    if tol <= 0:
        raise ValueError("find_root: tol must be positive")
    flo = _eval_real(f, lo)
    fhi = _eval_real(f, hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={flo:.3e}, {fhi:.3e}")
    a, b, fa, fb = lo, hi, flo, fhi
    width = b - a
    use_secant = True
    for _ in range(maxiter):
        if b - a <= tol:
            break
        x = None
        if use_secant and fb != fa:
            s = b - fb * (b - a) / (fb - fa)
            if a < s < b:
                x = s
        if x is None:
            x = 0.5 * (a + b)
        if x <= a or x >= b:
            break
        fx = _eval_real(f, x)
        if fx == 0.0:
            return x
        if (fa < 0) != (fx < 0):
            b, fb = x, fx
        else:
            a, fa = x, fx
        new_width = b - a
        use_secant = new_width <= 0.5 * width
        width = new_width
    return a if abs(fa) <= abs(fb) else b


def minimize_1d(f: Callable[[float], float], lo: float, hi: float,
                tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section search on [lo, hi] followed by one parabolic step.

    Returns ``(x_min, f_min)``.  The caller guarantees unimodality.
    """
    _check_finite(lo, hi, tol)
    if not lo < hi:
        raise ValueError(f"minimize_1d: need lo < hi, got [{lo}, {hi}]")
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1 = _eval_real(f, x1)
    f2 = _eval_real(f, x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            if not a < x1 < x2:
                break
            f1 = _eval_real(f, x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            if not x1 < x2 < b:
                break
            f2 = _eval_real(f, x2)
    if f1 <= f2:
        best_x, best_f = x1, f1
        left, right = a, x2
    else:
        best_x, best_f = x2, f2
        left, right = x1, b
    # parabola through (left, mid, right) around the incumbent
    xs = (left, best_x, right)
    if left < best_x < right:
        fl = _eval_real(f, left)
        fr = _eval_real(f, right)
        num = (best_x - left) ** 2 * (best_f - fr) - (best_x - right) ** 2 * (best_f - fl)
        den = (best_x - left) * (best_f - fr) - (best_x - right) * (best_f - fl)
        if den != 0.0:
            xp = best_x - 0.5 * num / den
            if xs[0] < xp < xs[2]:
                fp = _eval_real(f, xp)
                if fp < best_f:
                    best_x, best_f = xp, fp
    return best_x, best_f


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    node_count: int = 2001
    rule: str = "composite-simpson"

    def __post_init__(self):
        if self.rule not in ("composite-simpson", "circle-trapezoid"):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")
        if self.node_count < 8:
            raise ValueError("node_count must be >= 8")
        if self.rule == "circle-trapezoid" and self.node_count % 2:
            raise ValueError("circle-trapezoid needs an even node count")


def circle_mean(f: Callable[[complex], complex], radius: float, nodes: int = 64) -> complex:
    """Mean of f over ``nodes`` equispaced points of the circle |w| = radius.

    This is the trapezoid rule for (1/2 pi i) \\oint f(w) dw/w, i.e. the
    constant Laurent coefficient of f.
    """
    if nodes < 16:
        raise ValueError("circle_mean needs at least 16 nodes")
    _check_finite(radius)
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    points = radius * np.exp(1j * theta)
    total = 0.0j
    for w in points:
        v = complex(f(complex(w)))
        if not cmath.isfinite(v):
            raise NumericError(f"circle_mean: non-finite sample at w={w}")
        total += v
    return total / nodes


def integrate(f: Callable, a: float, b: float, spec: QuadratureSpec = QuadratureSpec(),
              vectorized: bool = False) -> float:
    """Composite Simpson integral of a real function over [a, b].

    With ``vectorized=True`` f is called once on the whole node array.
    """
    if spec.rule != "composite-simpson":
        raise ValueError("integrate supports the composite-simpson rule only")
    _check_finite(a, b)
    if not a < b:
        raise ValueError("integrate: need a < b")
    n = spec.node_count if spec.node_count % 2 == 1 else spec.node_count + 1
    x = np.linspace(a, b, n)
    if vectorized:
        y = np.asarray(f(x), dtype=float)
    else:
        y = np.array([float(f(float(t))) for t in x])
    if not np.all(np.isfinite(y)):
        raise NumericError("integrate: non-finite sample")
    h = (b - a) / (n - 1)
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum()))
