"""
Law registry: free cumulants and R / K / Cauchy transforms.

Each law is an immutable object.  The three bridge functionals are

* ``SquareNorm``  -- the squared L2-norm, R(z) = (1 - sqrt(z) cot sqrt(z)) / (2z),
* ``LevyArea``    -- the Levy area, R(z) = 1/z - pi cot(pi z),
* ``TensorSignature`` -- the second signature component, known through its
  cumulants 2 zeta(2n) q_n only (q_n the 2-irreducible meander numbers),

and they are assembled from the building blocks ``Semicircle``,
``FreePoisson`` and ``Commutator`` together with the combinators ``Scaled``
and ``FreeConv``.

The Cauchy transform follows G(z) = int mu(dt) / (z - t), so G(z) ~ 1/z at
infinity and G maps the upper half plane into the lower one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ArityError, DomainError, NumericError, RangeError
from .ncpart import meander_numbers, moments_from_cumulants
from .numerics import (EULER_GAMMA, circle_mean, complex_cot, complex_csc2, digamma,
                       zeta_even)

NEAR_ZERO = 1e-2
DEFAULT_HORIZON = 4096
SIGNATURE_HORIZON = 24
SIGNATURE_RADIUS = 4.0 / math.pi - 1.0


@lru_cache(maxsize=None)
def zeta_even_any(m: int) -> float:
    """zeta(2m) for any m >= 1; direct summation once Bernoulli numbers run out."""
    if m <= 30:
        return zeta_even(m)
    # 6^{-62} < 1e-48, so five terms are exact in double precision
    return math.fsum(n ** (-2.0 * m) for n in range(1, 6))


def _complex(z) -> complex:
    z = complex(z)
    if not cmath.isfinite(z):
        raise NumericError(f"non-finite argument {z!r}")
    return z


class Law:
    """Interface shared by all laws.  Subclasses provide the R-transform."""

    symmetric: bool = False
    horizon: int = DEFAULT_HORIZON

    # --- cumulants -------------------------------------------------------
    def cumulant(self, m: int) -> float:
        self._check_order(m)
        return self._cumulant(m)

    def log_cumulant(self, m: int) -> float:
        """log k_m for k_m > 0; avoids underflow for large orders."""
        k = self.cumulant(m)
        if k <= 0:
            raise DomainError(f"log_cumulant: k_{m} = {k} is not positive")
        return math.log(k)

    def cumulants(self, n: int) -> list[float]:
        return [self.cumulant(m) for m in range(1, n + 1)]

    def _check_order(self, m: int) -> None:
        if m < 1:
            raise RangeError(f"cumulant order must be >= 1, got {m}")
        if m > self.horizon:
            raise RangeError(f"order {m} exceeds cumulant horizon {self.horizon}")

    def _cumulant(self, m: int) -> float:
        raise NotImplementedError

    # --- transforms ------------------------------------------------------
    def r(self, z) -> complex:
        raise NotImplementedError

    def r_prime(self, z) -> complex:
        raise NotImplementedError

    def k(self, z) -> complex:
        z = _complex(z)
        if z == 0:
            raise DomainError("K has a pole at z = 0")
        return self.r(z) + 1.0 / z

    def k_prime(self, z) -> complex:
        z = _complex(z)
        if z == 0:
            raise DomainError("K has a pole at z = 0")
        return self.r_prime(z) - 1.0 / (z * z)

    def moment(self, n: int) -> float:
        return moments_from_cumulants(self.cumulants(n), n)

    def cauchy(self, z) -> complex:
        return cauchy_eval(self, z)

    # crude a-priori bound on the support, used to start Newton paths
    support_bound: float = 1.0

    # right end of the real interval (0, positive_limit) on which K is analytic
    @property
    def positive_limit(self) -> float:
        return math.inf

    @property
    def negative_limit(self) -> float:
        """|z| bound of the interval (-negative_limit, 0) on which K is analytic."""
        return math.inf

    def as_dict(self) -> dict:
        raise NotImplementedError


def _series_r(law: Law, z: complex, terms: int) -> complex:
    acc = 0j
    for m in range(terms, 0, -1):
        acc = acc * z + law.cumulant(m)
    return acc


def _series_r_prime(law: Law, z: complex, terms: int) -> complex:
    acc = 0j
    for m in range(terms, 1, -1):
        acc = acc * z + (m - 1) * law.cumulant(m)
    return acc


@dataclass(frozen=True)
class Semicircle(Law):
    """Centred semicircle law of the given radius; only k_2 = (radius/2)^2."""

    radius: float = 2.0
    symmetric = True

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("semicircle radius must be positive")

    @property
    def support_bound(self):
        return self.radius

    def _cumulant(self, m):
        return (self.radius / 2.0) ** 2 if m == 2 else 0.0

    def r(self, z):
        return (self.radius / 2.0) ** 2 * _complex(z)

    def r_prime(self, z):
        return complex((self.radius / 2.0) ** 2)

    def as_dict(self):
        return {"law": "semicircle", "params": {"radius": self.radius}}


@dataclass(frozen=True)
class FreePoisson(Law):
    """Free Poisson law of unit rate and jump size: every free cumulant is 1."""

    support_bound = 4.0

    def _cumulant(self, m):
        return 1.0

    def r(self, z):
        z = _complex(z)
        if z == 1:
            raise DomainError("free Poisson R has a pole at z = 1")
        return 1.0 / (1.0 - z)

    def r_prime(self, z):
        z = _complex(z)
        if z == 1:
            raise DomainError("free Poisson R has a pole at z = 1")
        return 1.0 / (1.0 - z) ** 2

    @property
    def positive_limit(self):
        return 1.0

    def as_dict(self):
        return {"law": "free-poisson", "params": {}}


@dataclass(frozen=True)
class SquareNorm(Law):
    """Squared L2-norm of the free Brownian bridge on [0, 1]."""

    support_bound = 1.0

    def _cumulant(self, m):
        if m > 150:
            return math.exp(self.log_cumulant(m))   # pi^(2m) overflows near m = 310
        return zeta_even_any(m) / math.pi ** (2 * m)

    def log_cumulant(self, m):
        self._check_order(m)
        return math.log(zeta_even_any(m)) - 2 * m * math.log(math.pi)

    @staticmethod
    def _wcotw(z: complex) -> complex:
        w = cmath.sqrt(z)
        return w * complex_cot(w)

    def r(self, z):
        z = _complex(z)
        if abs(z) < NEAR_ZERO:
            return _series_r(self, z, 10)
        return (1.0 - self._wcotw(z)) / (2.0 * z)

    def k(self, z):
        z = _complex(z)
        if z == 0:
            raise DomainError("K has a pole at z = 0")
        if abs(z) < NEAR_ZERO:
            return _series_r(self, z, 10) + 1.0 / z
        return (3.0 - self._wcotw(z)) / (2.0 * z)

    def r_prime(self, z):
        z = _complex(z)
        if abs(z) < 1.0:
            return _series_r_prime(self, z, 24)
        w = cmath.sqrt(z)
        f = w * complex_cot(w)
        df = (complex_cot(w) - w * complex_csc2(w)) / (2.0 * w)
        return -df / (2.0 * z) - (1.0 - f) / (2.0 * z * z)

    @property
    def positive_limit(self):
        return math.pi ** 2

    def as_dict(self):
        return {"law": "gamma", "params": {}}


@dataclass(frozen=True)
class LevyArea(Law):
    """Levy area of the free Brownian bridge on [0, 2 pi]."""

    symmetric = True
    support_bound = 4.0

    def _cumulant(self, m):
        return 2.0 * zeta_even_any(m // 2) if m % 2 == 0 else 0.0

    def log_cumulant(self, m):
        self._check_order(m)
        if m % 2:
            raise DomainError("odd cumulants of the Levy area vanish")
        return math.log(2.0 * zeta_even_any(m // 2))

    def r(self, z):
        z = _complex(z)
        if abs(z) < NEAR_ZERO:
            return _series_r(self, z, 12)
        return 1.0 / z - math.pi * complex_cot(math.pi * z)

    def r_prime(self, z):
        z = _complex(z)
        if abs(z) < 0.1:
            return _series_r_prime(self, z, 24)
        return -1.0 / (z * z) + math.pi ** 2 * complex_csc2(math.pi * z)

    @property
    def positive_limit(self):
        return 1.0

    @property
    def negative_limit(self):
        return 1.0

    def as_dict(self):
        return {"law": "levy-area", "params": {}}


@dataclass(frozen=True)
class Commutator(Law):
    """Law of i(xi eta - eta xi) for free standard semicirculars xi, eta."""

    symmetric = True
    support_bound = 3.34

    def _cumulant(self, m):
        return 2.0 if m % 2 == 0 else 0.0

    def r(self, z):
        z = _complex(z)
        if z * z == 1:
            raise DomainError("commutator R has poles at z = +-1")
        return 2.0 * z / (1.0 - z * z)

    def r_prime(self, z):
        z = _complex(z)
        if z * z == 1:
            raise DomainError("commutator R has poles at z = +-1")
        return 2.0 * (1.0 + z * z) / (1.0 - z * z) ** 2

    @property
    def positive_limit(self):
        return 1.0

    @property
    def negative_limit(self):
        return 1.0

    def as_dict(self):
        return {"law": "commutator", "params": {}}


@dataclass(frozen=True)
class TensorSignature(Law):
    """
    Second signature component Z(2 pi) under the product state.

    Only the cumulant series is available: k_{2n} = 2 zeta(2n) q_n, with
    radius of convergence 4/pi - 1.
    """

    horizon: int = SIGNATURE_HORIZON
    symmetric = True
    support_bound = 8.0

    def __post_init__(self):
        if self.horizon < 2:
            raise ValueError("signature horizon must be >= 2")

    @property
    def meanders(self) -> list[int]:
        return _meanders(self.horizon // 2)

    def _cumulant(self, m):
        if m % 2:
            return 0.0
        return 2.0 * zeta_even_any(m // 2) * float(self.meanders[m // 2 - 1])

    def _check_region(self, z):
        if abs(z) >= SIGNATURE_RADIUS:
            raise DomainError(f"|z| = {abs(z):.4g} outside the signature R-series disc")

    def r(self, z):
        z = _complex(z)
        self._check_region(z)
        return _series_r(self, z, 2 * (self.horizon // 2))

    def r_prime(self, z):
        z = _complex(z)
        self._check_region(z)
        return _series_r_prime(self, z, 2 * (self.horizon // 2))

    @property
    def positive_limit(self):
        return SIGNATURE_RADIUS

    @property
    def negative_limit(self):
        return SIGNATURE_RADIUS

    def as_dict(self):
        return {"law": "signature", "params": {"horizon": self.horizon}}


@lru_cache(maxsize=None)
def _meanders(count: int) -> list[int]:
    return meander_numbers(count)


@dataclass(frozen=True)
class Scaled(Law):
    """Law of lam * a: cumulants lam^m k_m and R(z) = lam R_a(lam z)."""

    base: Law
    lam: float

    def __post_init__(self):
        if self.lam == 0 or not math.isfinite(self.lam):
            raise ValueError("scale factor must be finite and nonzero")

    @property
    def horizon(self):
        return self.base.horizon

    @property
    def symmetric(self):
        return self.base.symmetric

    @property
    def support_bound(self):
        return abs(self.lam) * self.base.support_bound

    def _cumulant(self, m):
        return self.lam ** m * self.base.cumulant(m)

    def log_cumulant(self, m):
        self._check_order(m)
        if self.lam < 0 and m % 2:
            return super().log_cumulant(m)
        return m * math.log(abs(self.lam)) + self.base.log_cumulant(m)

    def r(self, z):
        return self.lam * self.base.r(self.lam * _complex(z))

    def r_prime(self, z):
        return self.lam ** 2 * self.base.r_prime(self.lam * _complex(z))

    @property
    def positive_limit(self):
        lim = self.base.positive_limit if self.lam > 0 else self.base.negative_limit
        return lim / abs(self.lam)

    @property
    def negative_limit(self):
        lim = self.base.negative_limit if self.lam > 0 else self.base.positive_limit
        return lim / abs(self.lam)

    def as_dict(self):
        return {"law": "scaled", "params": {"base": self.base.as_dict(), "lambda": self.lam}}


@dataclass(frozen=True)
class FreeConv(Law):
    """Free additive convolution: cumulants and R-transforms add."""

    a: Law
    b: Law

    @property
    def horizon(self):
        return min(self.a.horizon, self.b.horizon)

    @property
    def symmetric(self):
        return self.a.symmetric and self.b.symmetric

    @property
    def support_bound(self):
        return self.a.support_bound + self.b.support_bound

    def _cumulant(self, m):
        return self.a.cumulant(m) + self.b.cumulant(m)

    def r(self, z):
        return self.a.r(z) + self.b.r(z)

    def r_prime(self, z):
        return self.a.r_prime(z) + self.b.r_prime(z)

    @property
    def positive_limit(self):
        return min(self.a.positive_limit, self.b.positive_limit)

    @property
    def negative_limit(self):
        return min(self.a.negative_limit, self.b.negative_limit)

    def as_dict(self):
        return {"law": "free-conv", "params": {"a": self.a.as_dict(), "b": self.b.as_dict()}}


LAW_NAMES = {
    "semicircle": Semicircle,
    "free-poisson": FreePoisson,
    "gamma": SquareNorm,
    "levy-area": LevyArea,
    "commutator": Commutator,
    "signature": TensorSignature,
}


def law_from_dict(spec: dict) -> Law:
    """Inverse of ``Law.as_dict``."""
    name = spec["law"]
    params = dict(spec.get("params", {}))
    if name == "scaled":
        return Scaled(law_from_dict(params["base"]), float(params["lambda"]))
    if name == "free-conv":
        return FreeConv(law_from_dict(params["a"]), law_from_dict(params["b"]))
    if name == "gamma-truncated":
        return TruncatedSquareNorm(**params)
    if name == "levy-area-truncated":
        return TruncatedLevyArea(**params)
    if name not in LAW_NAMES:
        raise KeyError(f"unknown law {name!r}")
    return LAW_NAMES[name](**params)


def _power_tail(m: int, n: int) -> float:
    """Euler-Maclaurin value of sum_{j > n} j^(-2m) (two correction terms)."""
    return (n ** (1 - 2 * m) / (2 * m - 1) - 0.5 * n ** (-2 * m)
            + m * n ** (-2 * m - 1) / 6.0)


def _atanh_over(w: complex) -> complex:
    # artanh(w)/w, by its series when |w| is tiny
    if abs(w) < 1e-3:
        w2 = w * w
        return 1.0 + w2 / 3.0 + w2 * w2 / 5.0 + w2 ** 3 / 7.0
    return cmath.atanh(w) / w


@dataclass(frozen=True)
class TruncatedSquareNorm(Law):
    """
    (1/pi^2) sum_{j <= modes} eta_j^2 / j^2: a free sum of scaled free Poisson
    laws, R(z) = sum_j c_j / (1 - c_j z) with c_j = 1/(j pi)^2.

    With ``tail=True`` the missing modes are restored by the Euler-Maclaurin
    integral of the summand, which makes the law an approximation of
    ``SquareNorm`` instead of the exact law of the truncated model.
    """

    modes: int = 2000
    tail: bool = False
    support_bound = 1.0

    def __post_init__(self):
        if self.modes < 1:
            raise RangeError("need at least one mode")

    @property
    def _c(self):
        return _pf_weights(self.modes)

    def _cumulant(self, m):
        j = _pf_index(self.modes)
        value = float(np.sum((j * j) ** (-float(m)))) / math.pi ** (2 * m)
        if self.tail:
            value += _power_tail(m, self.modes) / math.pi ** (2 * m)
        return value

    def r(self, z):
        z = _complex(z)
        c = self._c
        value = complex(np.sum(c / (1.0 - c * z)))
        if self.tail:
            n = self.modes
            a = math.pi ** 2 * n * n - z
            w = cmath.sqrt(z) / (math.pi * n)
            value += (_atanh_over(w) / (math.pi ** 2 * n) - 0.5 / a
                      + math.pi ** 2 * n / (6.0 * a * a))
        return value

    def r_prime(self, z):
        z = _complex(z)
        if self.tail:
            raise NotImplementedError("r_prime with tail correction")
        c = self._c
        return complex(np.sum(c * c / (1.0 - c * z) ** 2))

    @property
    def positive_limit(self):
        return math.pi ** 2

    def as_dict(self):
        return {"law": "gamma-truncated", "params": {"modes": self.modes, "tail": self.tail}}


@dataclass(frozen=True)
class TruncatedLevyArea(Law):
    """
    i sum_{j <= modes} (xi_j eta_j - eta_j xi_j)/j: a free sum of scaled
    commutators, R(z) = sum_j 2z / (j^2 - z^2).  ``tail`` as for
    ``TruncatedSquareNorm``.
    """

    modes: int = 2000
    tail: bool = False
    symmetric = True
    support_bound = 4.0

    def __post_init__(self):
        if self.modes < 1:
            raise RangeError("need at least one mode")

    def _cumulant(self, m):
        if m % 2:
            return 0.0
        j = _pf_index(self.modes)
        value = 2.0 * float(np.sum((j * j) ** (-float(m // 2))))
        if self.tail:
            value += 2.0 * _power_tail(m // 2, self.modes)
        return value

    def r(self, z):
        z = _complex(z)
        j2 = _pf_index(self.modes) ** 2
        value = complex(np.sum(2.0 * z / (j2 - z * z)))
        if self.tail:
            n = self.modes
            a = n * n - z * z
            value += (2.0 * z / n) * _atanh_over(z / n) - z / a + n * z / (3.0 * a * a)
        return value

    def r_prime(self, z):
        z = _complex(z)
        if self.tail:
            raise NotImplementedError("r_prime with tail correction")
        j2 = _pf_index(self.modes) ** 2
        return complex(np.sum(2.0 * (j2 + z * z) / (j2 - z * z) ** 2))

    @property
    def positive_limit(self):
        return 1.0

    @property
    def negative_limit(self):
        return 1.0

    def as_dict(self):
        return {"law": "levy-area-truncated", "params": {"modes": self.modes, "tail": self.tail}}


@lru_cache(maxsize=8)
def _pf_index(n: int) -> np.ndarray:
    return np.arange(1, n + 1, dtype=float)


@lru_cache(maxsize=8)
def _pf_weights(n: int) -> np.ndarray:
    j = _pf_index(n)
    return 1.0 / (math.pi * j) ** 2


def truncated_square_norm(modes: int) -> Law:
    """Exact law of the M-mode matrix model of the squared norm."""
    return TruncatedSquareNorm(modes)


def truncated_levy_area(modes: int) -> Law:
    """Exact law of the M-mode matrix model of the Levy area."""
    return TruncatedLevyArea(modes)


# ---------------------------------------------------------------------------
# Functional surface
# ---------------------------------------------------------------------------

def cumulant(law: Law, m: int) -> float:
    return law.cumulant(m)


def r_eval(law: Law, z) -> complex:
    return law.r(z)


def k_eval(law: Law, z) -> complex:
    return law.k(z)


def moment(law: Law, n: int) -> float:
    return law.moment(n)


def _newton(law: Law, z: complex, g: complex, iters: int = 60) -> tuple[complex, float]:
    res = law.k(g) - z
    for _ in range(iters):
        if abs(res) <= 1e-14 * max(1.0, abs(z)):
            break
        try:
            step = res / law.k_prime(g)
        except (DomainError, ZeroDivisionError):
            break
        lam = 1.0
        improved = False
        for _ in range(30):
            trial = g - lam * step
            if trial.imag < 0:
                try:
                    tres = law.k(trial) - z
                except DomainError:
                    tres = None
                if tres is not None and cmath.isfinite(tres) and abs(tres) < abs(res):
                    g, res = trial, tres
                    improved = True
                    break
            lam *= 0.5
        if not improved:
            break
    return g, abs(res)


def cauchy_eval(law: Law, z, tol: float = 1e-10) -> complex:
    """
    Cauchy transform G(z) for Im z > 0, obtained by solving K(g) = z.

    Newton's method is continued along a path that starts high above the
    support, where G ~ 1/z, and descends geometrically to the target; each
    converged value seeds the next step.  The path is refined (12, 25, 50
    steps) before giving up.
    """
    z = _complex(z)
    if not z.imag > 0:
        raise DomainError("cauchy_eval needs Im z > 0")
    top = 5.0 * (1.0 + law.support_bound)
    if abs(z) >= top:
        g, res = _newton(law, z, 1.0 / z)
        if res < tol and g.imag < 0:
            return g
    for steps in (12, 25, 50):
        start = complex(z.real, max(top, z.imag))
        g, res = _newton(law, start, 1.0 / start)
        if res >= tol:
            continue
        ratio = (z.imag / start.imag) ** (1.0 / steps)
        y = start.imag
        ok = True
        for _ in range(steps):
            y *= ratio
            g, res = _newton(law, complex(z.real, y), g)
            if res >= tol or not g.imag < 0:
                ok = False
                break
        if ok:
            g, res = _newton(law, z, g)
            if res < tol and g.imag < 0:
                return g
    raise NumericError(f"cauchy_eval: Newton failed for {law.as_dict()['law']} at z={z}")


# ---------------------------------------------------------------------------
# Hadamard products and the signature R-transform
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesPoly:
    """Truncated power series c_0 + c_1 z + ... + c_M z^M."""

    coeffs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("SeriesPoly needs at least one coefficient")
        for c in self.coeffs:
            if not cmath.isfinite(c):
                raise NumericError("non-finite series coefficient")

    def __call__(self, z) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __len__(self):
        return len(self.coeffs)


def hadamard_coeffs(f: SeriesPoly, g: SeriesPoly) -> SeriesPoly:
    """Coefficientwise product of two series of equal truncation order."""
    if len(f) != len(g):
        raise ArityError(f"series lengths differ: {len(f)} vs {len(g)}")
    return SeriesPoly(tuple(a * b for a, b in zip(f.coeffs, g.coeffs)))


def hadamard_contour(f_eval: Callable, g_eval: Callable, z, radius: float = 1.0,
                     nodes: int = 128) -> complex:
    """(f [Hadamard] g)(z^2) as the constant Laurent term of w -> f(z w) g(z / w)."""
    if nodes < 64:
        raise ValueError("hadamard_contour needs at least 64 nodes")
    z = _complex(z)
    if z == 0:
        return complex(f_eval(0j)) * complex(g_eval(0j))
    return circle_mean(lambda w: f_eval(z * w) * g_eval(z / w), radius, nodes)


def lambda_eval(z) -> complex:
    """Lambda(z) = sum_{m >= 2} zeta(m) z^m = -z Psi(1 - z) - gamma z."""
    z = _complex(z)
    if z == 0:
        return 0j
    return -z * digamma(1.0 - z) - EULER_GAMMA * z


def meander_series(count: int = SIGNATURE_HORIZON // 2) -> SeriesPoly:
    """Q(u) = 1 + sum_{n <= count} q_n u^{2n}, truncated."""
    coeffs = [0.0] * (2 * count + 1)
    coeffs[0] = 1.0
    for n, q in enumerate(_meanders(count), start=1):
        coeffs[2 * n] = float(q)
    return SeriesPoly(tuple(coeffs))


def zeta_series(order: int) -> SeriesPoly:
    """Lambda truncated: coefficients zeta(m) for 2 <= m <= order (even m only exact here)."""
    coeffs = [0.0] * (order + 1)
    for m in range(2, order + 1):
        if m % 2 == 0:
            coeffs[m] = zeta_even_any(m // 2)
        else:
            coeffs[m] = _zeta_odd(m)
    return SeriesPoly(tuple(coeffs))


def _zeta_odd(s: int) -> float:
    # Euler-Maclaurin with N = 40 through the B_6 term: remainder below 1e-17
    # for s >= 3
    n_max = 40
    head = math.fsum(n ** (-float(s)) for n in range(1, n_max))
    t = n_max ** (1.0 - s) / (s - 1) + 0.5 * n_max ** (-float(s))
    t += s * n_max ** (-s - 1.0) / 12.0
    t -= s * (s + 1) * (s + 2) * n_max ** (-s - 3.0) / 720.0
    t += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * n_max ** (-s - 5.0) / 30240.0
    return head + t


def signature_coefficients_contour(count: int = 6, s_radius: float = 0.5,
                                   outer_nodes: int = 64, inner_nodes: int = 128) -> list[float]:
    """
    Cumulants k_{2n}(Z) = 2 zeta(2n) q_n for n <= count, recovered from
    H(s) = (Q [Hadamard] Lambda)(s) via the contour form with Lambda in its
    digamma form and Q truncated, followed by coefficient extraction on a
    circle |s| = s_radius.
    """
    q_series = meander_series(SIGNATURE_HORIZON // 2)

    def h(s: complex) -> complex:
        return hadamard_contour(lambda_eval, q_series, cmath.sqrt(s), 1.0, inner_nodes)

    samples = {}
    theta = [2.0 * math.pi * j / outer_nodes for j in range(outer_nodes)]
    for t in theta:
        s = s_radius * cmath.exp(1j * t)
        samples[t] = h(s)
    out = []
    for n in range(1, count + 1):
        acc = 0j
        for t in theta:
            acc += samples[t] * cmath.exp(-2j * n * t)
        out.append(2.0 * (acc / outer_nodes).real / s_radius ** (2 * n))
    return out
