"""
Support edges by three independent routes.

``edge_kmin``
    Critical points of K on the real axis: the right edge is the local
    minimum of K on (0, first pole), the left edge the local maximum of K on
    the negative axis.
``edge_variational``
    The entropy-type supremum over probability vectors p on the cumulant
    indices, restricted to the exponential tilts p_n(u) proportional to
    k_n u^n (the stationary points of the Lagrangian), so only a scalar
    maximisation over u remains.
``edge_implicit``
    Closed scalar equations for the squared norm and the Levy area whose root
    m* gives the edge through an explicit formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BracketError, DomainError, NumericError, RangeError
from .laws import Commutator, Law, LevyArea, SquareNorm
from .numerics import find_root, minimize_1d

FD_STEP = 1e-6
TAIL_TOL = 1e-13
MAX_HORIZON = 4096
SCAN_POINTS = 600


@dataclass(frozen=True)
class EdgeReport:
    law: str
    method: str
    right: float
    left: float | None
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.left is not None and not self.left < self.right:
            raise NumericError(f"edge report with left={self.left} >= right={self.right}")

    def as_dict(self) -> dict:
        return {"law": self.law, "method": self.method, "left": self.left,
                "right": self.right, "diagnostics": dict(self.diagnostics)}


def _law_id(law: Law) -> str:
    return law.as_dict()["law"]


# ---------------------------------------------------------------------------
# critical points of K
# ---------------------------------------------------------------------------

def _k_real(law: Law, z: float) -> float:
    return law.k(z).real


def _fd_derivative(law: Law, z: float) -> float:
    """Centred difference of K with one Richardson step."""
    h = FD_STEP * (1.0 + abs(z))

    def central(step):
        return (_k_real(law, z + step) - _k_real(law, z - step)) / (2.0 * step)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def _analytic_derivative(law: Law):
    try:
        law.k_prime(0.5)
    except NotImplementedError:
        return None
    except DomainError:
        pass
    return lambda z: law.k_prime(z).real


def _critical_point(law: Law, lo: float, hi: float, want: str) -> float:
    """First sign change of K' on a log grid between |lo| and |hi| (same sign)."""
    sign = 1.0 if lo > 0 else -1.0
    a, b = abs(lo), abs(hi)
    grid = sign * np.geomspace(a, b, SCAN_POINTS)
    # for the right edge K decreases then increases (K' from - to +); on the
    # negative axis, moving away from 0, K rises to its maximum then falls
    expect = (-1.0, 1.0) if want == "min" else (1.0, -1.0)
    if sign < 0:
        expect = (-expect[0], -expect[1])   # the grid runs towards -infinity
    derivative = lambda z: _fd_derivative(law, z)
    prev_z, prev_d = None, None
    for z in grid:
        try:
            d = derivative(float(z))
        except DomainError:
            prev_z, prev_d = None, None
            continue
        if not math.isfinite(d):
            prev_z, prev_d = None, None
            continue
        if prev_d is not None and prev_d * expect[0] > 0 and d * expect[1] > 0:
            x0, x1 = sorted((prev_z, float(z)))
            root = find_root(derivative, x0, x1, tol=1e-13 * (1 + abs(x1)))
            exact = _analytic_derivative(law)
            if exact is not None:
                try:
                    width = 1e-4 * (1.0 + abs(root))
                    root = find_root(exact, max(x0, root - width), min(x1, root + width),
                                     tol=1e-15 * (1 + abs(root)))
                except (BracketError, DomainError):
                    pass
            return root
        prev_z, prev_d = float(z), d
    raise NumericError(f"edge_kmin: no interior critical point of K for {_law_id(law)} "
                       f"on [{lo}, {hi}]")


def _scan_limit(limit: float) -> float:
    return limit * (1.0 - 1e-9) if math.isfinite(limit) else 1e4


def edge_kmin(law: Law) -> EdgeReport:
    """Edges from the critical points of K on the real axis."""
    start = 1e-4
    z_right = _critical_point(law, start, _scan_limit(law.positive_limit), "min")
    right = _k_real(law, z_right)
    diag = {"z_critical_right": z_right}
    if law.symmetric:
        left = -right
        diag["z_critical_left"] = -z_right
    else:
        z_left = _critical_point(law, -start, -_scan_limit(law.negative_limit), "max")
        left = _k_real(law, z_left)
        diag["z_critical_left"] = z_left
    return EdgeReport(_law_id(law), "kmin", right, left, diag)


# ---------------------------------------------------------------------------
# variational formula
# ---------------------------------------------------------------------------

def theta(m: float) -> float:
    """Theta(m) = log(m - 1) - m log(1 - 1/m), for m > 1."""
    if not m > 1:
        raise DomainError(f"Theta needs m > 1, got {m}")
    return math.log(m - 1.0) - m * math.log1p(-1.0 / m)


@dataclass(frozen=True)
class TiltState:
    """The tilted probability vector p_n = k_n u^n / S(u) and its objective."""

    u: float
    log_s: float
    mean: float
    objective: float
    terms: int
    tail: float

    @property
    def s(self) -> float:
        return math.exp(self.log_s)


class _Tilt:
    """Log-cumulant table with adaptive length for evaluating tilts."""

    def __init__(self, law: Law, horizon: int):
        if horizon < 16:
            raise RangeError(f"variational horizon must be >= 16, got {horizon}")
        self.law = law
        self.cap = min(MAX_HORIZON, law.horizon)
        if horizon > self.cap:
            raise RangeError(f"horizon {horizon} exceeds the cumulant horizon {self.cap}")
        self.horizon = horizon
        self.n = np.zeros(0)
        self.logk = np.zeros(0)
        self._length = 0
        self._extend(horizon)

    def _extend(self, upto: int) -> None:
        upto = min(upto, self.cap)
        start = self._length + 1
        ns, logs = [], []
        for m in range(start, upto + 1):
            if self.law.symmetric and m % 2:
                continue
            try:
                lk = self.law.log_cumulant(m)
            except DomainError:
                k = self.law.cumulant(m)
                if k == 0:
                    continue        # genuinely vanishing cumulant
                raise DomainError(f"cumulant k_{m} = {k} is negative") from None
            ns.append(m)
            logs.append(lk)
        self.n = np.concatenate((self.n, np.array(ns, dtype=float)))
        self.logk = np.concatenate((self.logk, np.array(logs)))
        self._length = upto

    def state(self, u: float) -> TiltState:
        if not u > 0:
            raise DomainError("tilt parameter must be positive")
        log_u = math.log(u)
        length = self.horizon
        while True:
            if length > self._length:
                self._extend(length)
            mask = self.n <= length
            a = self.logk[mask] + self.n[mask] * log_u
            if a.size == 0:
                raise DomainError("no non-zero cumulants within the horizon")
            top = a.max()
            w = np.exp(a - top)
            total = w.sum()
            tail = self._tail(a, top, total, mask)
            if tail < TAIL_TOL:
                break
            if length >= self.cap:
                raise NumericError(f"variational tail {tail:.2e} at u={u} exceeds "
                                   f"{TAIL_TOL} at horizon {length}")
            length = min(2 * length, self.cap)
        p = w / total
        mean = float(np.dot(p, self.n[mask]))
        log_s = float(top + math.log(total))
        if not mean > 1.0:
            objective = -math.inf
        else:
            objective = (log_s - mean * log_u + theta(mean)) / mean
        return TiltState(u, log_s, mean, float(objective), length, float(tail))

    def _tail(self, a, top, total, mask) -> float:
        # geometric extrapolation from the last two retained terms, relative to S
        if a.size < 2:
            return 0.0
        last, before = a[-1], a[-2]
        log_step = last - before            # log of the ratio between retained terms
        if log_step >= 0.0:
            return math.inf
        return math.exp(last - top + log_step - math.log(-math.expm1(log_step))) / total


def edge_variational(law: Law, horizon: int = 40) -> EdgeReport:
    """
    Right edge from the supremum over exponential tilts.

    J(u) = [log S(u) - m1(u) log u + Theta(m1(u))] / m1(u), maximised over
    u in (0, radius) where radius is the convergence radius of the cumulant
    series; the edge is exp(sup J).  The horizon is the initial truncation;
    it is doubled until the geometric tail bound drops below 1e-13 S(u).
    For laws with vanishing odd cumulants only even indices carry mass.
    """
    tilt = _Tilt(law, horizon)
    radius = law.positive_limit if math.isfinite(law.positive_limit) else 1e6
    us = np.geomspace(radius * 1e-6, radius * (1.0 - 1e-6), 241)
    values = []
    for u in us:
        try:
            values.append(tilt.state(float(u)).objective)
        except NumericError:
            values.append(-math.inf)
    values = np.array(values)
    if not np.any(np.isfinite(values)):
        raise NumericError("edge_variational: objective undefined on the whole u grid")
    best = int(np.argmax(values))
    lo = math.log(us[max(best - 1, 0)])
    hi = math.log(us[min(best + 1, len(us) - 1)])

    def negative(log_u: float) -> float:
        value = tilt.state(math.exp(log_u)).objective
        return -value if math.isfinite(value) else 1e300

    if hi > lo:
        log_u, _ = minimize_1d(negative, lo, hi, tol=1e-12)
    else:
        log_u = lo
    state = tilt.state(math.exp(log_u))
    if state.objective < values[best]:
        state = tilt.state(float(us[best]))
    right = math.exp(state.objective)
    left = -right if law.symmetric else None
    diag = {"u": float(state.u), "mean": float(state.mean),
            "objective": float(state.objective), "terms": int(state.terms),
            "tail": float(state.tail)}
    return EdgeReport(_law_id(law), "variational", right, left, diag)


def tilt_state(law: Law, u: float, horizon: int = 40) -> TiltState:
    return _Tilt(law, horizon).state(u)


# ---------------------------------------------------------------------------
# implicit equations
# ---------------------------------------------------------------------------

def _xcot(s2: float, scale: float) -> float:
    """sqrt(s2) cot(sqrt(s2)/scale), continued to s2 < 0 as u coth(u/scale)."""
    if s2 >= 0:
        s = math.sqrt(s2)
        if s == 0:
            return scale
        return s / math.tan(s / scale)
    u = math.sqrt(-s2)
    return u / math.tanh(u / scale)


def square_norm_equation(m: float, reading: str = "sqrt") -> float:
    """
    F(m) = m - 3 - sqrt(4m^2-2m-6) cot(arg / (m - 1)) for the squared norm.

    ``reading="sqrt"`` uses arg = sqrt(4m^2-2m-6); ``reading="printed"`` uses
    arg = 4m^2-2m-6 itself.  A negative radicand continues cot to coth.
    """
    q = 4.0 * m * m - 2.0 * m - 6.0
    if m == 1.0:
        raise DomainError("equation singular at m = 1")
    if reading == "sqrt":
        return m - 3.0 - _xcot(q, m - 1.0)
    if reading == "printed":
        if q < 0:
            # sqrt(q) cot(q/(m-1)) with sqrt(q) = i sqrt(-q) is not real
            raise DomainError("printed reading has no real continuation for 4m^2-2m-6 < 0")
        return m - 3.0 - math.sqrt(q) / math.tan(q / (m - 1.0))
    raise ValueError(f"unknown reading {reading!r}")


def levy_area_equation(m: float) -> float:
    """F(m) = m - 2 - sqrt(m^2-2) cot(sqrt(m^2-2)/(m-1))."""
    return m - 2.0 - _xcot(m * m - 2.0, m - 1.0)


def _is_zero_crossing(f, root: float, scale: float) -> bool:
    # reject sign changes through a pole or a jump: f must be small at the
    # root and continuous across it
    delta = 1e-7 * (1.0 + abs(root))
    try:
        mid, left, right = f(root), f(root - delta), f(root + delta)
    except DomainError:
        return False
    return abs(mid) < 1e-8 * scale and abs(right - left) < 1e-4 * scale


def _roots(f, lo: float, hi: float, points: int = 4000) -> list[float]:
    """All sign changes of f on a log grid that converge to genuine zeros."""
    grid = np.geomspace(lo, hi, points)
    roots = []
    prev_x, prev_f = None, None
    for x in grid:
        try:
            fx = f(float(x))
        except DomainError:
            prev_x, prev_f = None, None
            continue
        if prev_f is not None and (prev_f < 0) != (fx < 0):
            root = find_root(f, prev_x, float(x), tol=1e-15 * (1 + float(x)))
            if _is_zero_crossing(f, root, max(1.0, abs(prev_f), abs(fx))):
                roots.append(root)
        prev_x, prev_f = float(x), fx
    return roots


def _unique_root(f, lo, hi, what):
    roots = _roots(f, lo, hi)
    if not roots:
        raise NumericError(f"edge_implicit: no root of the {what} equation on ({lo}, {hi})")
    if len(roots) > 1:
        raise NumericError(f"edge_implicit: {len(roots)} roots of the {what} equation "
                           f"on ({lo}, {hi}): {roots}")
    return roots[0]


def square_norm_edge(m: float) -> float:
    return (m * m - m) / (4.0 * m * m - 2.0 * m - 6.0)


def levy_area_edge(m: float) -> float:
    return m * math.pi / math.sqrt(m * m - 2.0)


def edge_implicit(law: Law, reading: str = "sqrt") -> EdgeReport:
    """
    Edges from the scalar m* equations.

    Levy area: m* is the root on (sqrt 2, inf) of m - 2 = sqrt(m^2-2)
    cot(sqrt(m^2-2)/(m-1)), and the edge is m* pi / sqrt(m*^2 - 2).

    Commutator: the critical-point equation of K is a quadratic in z^2 and
    the edge has the closed form sqrt((11 + 5 sqrt 5)/2).

    Squared norm: m* is the root on (2/3, inf) of m - 3 = sqrt(4m^2-2m-6)
    cot(sqrt(4m^2-2m-6)/(m-1)) and b = (m*^2 - m*)/(4m*^2 - 2m* - 6).  The
    same equation, continued through cot -> coth, has one root on (0, 2/3),
    and the same map sends it to the left edge.
    """
    if isinstance(law, LevyArea):
        m = _unique_root(levy_area_equation, math.sqrt(2.0) * (1 + 1e-9), 1e3, "Levy area")
        right = levy_area_edge(m)
        return EdgeReport("levy-area", "implicit", right, -right, {"m_star": m})
    if isinstance(law, SquareNorm):
        f = lambda m: square_norm_equation(m, reading)
        if reading == "printed":
            roots = _roots(f, 1.5 * (1 + 1e-9), 1e3)
            if not roots:
                raise NumericError("edge_implicit: printed reading has no root")
            m = roots[0]
            return EdgeReport("gamma", "implicit", square_norm_edge(m), None,
                              {"m_star": m, "roots": roots, "reading": reading})
        m_right = _unique_root(f, 2.0 / 3.0, 1e3, "squared norm")
        m_left = _unique_root(f, 1e-6, 2.0 / 3.0, "squared norm (continued)")
        return EdgeReport("gamma", "implicit", square_norm_edge(m_right),
                          square_norm_edge(m_left),
                          {"m_star": m_right, "m_star_left": m_left, "reading": reading})
    if isinstance(law, Commutator):
        # K'(z) = 0 reduces to z^4 + 4 z^2 - 1 = 0, so z*^2 = sqrt 5 - 2 and the
        # edge K(z*) simplifies to sqrt((11 + 5 sqrt 5)/2)
        z = math.sqrt(math.sqrt(5.0) - 2.0)
        right = math.sqrt((11.0 + 5.0 * math.sqrt(5.0)) / 2.0)
        return EdgeReport("commutator", "implicit", right, -right,
                          {"z_star": z, "k_at_z_star": law.k(z).real})
    raise DomainError(f"no implicit edge equation for law {_law_id(law)!r}")


METHODS = {"kmin": edge_kmin, "variational": edge_variational, "implicit": edge_implicit}
