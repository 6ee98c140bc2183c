"""
Density recovery from the boundary curve of K.

For a freely infinitely divisible law with closed-form K, the density is read
off a curve in the lower half plane: for each angle t in (pi, 2 pi) there is a
radius r(t) > 0 with Im K(r e^{it}) = 0, the point x = K(r e^{it}) sweeps the
support, and the density there is -r sin(t) / pi.  Stieltjes inversion of the
Cauchy transform gives an independent second route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BracketError, DomainError, NumericError, RangeError
from .laws import (Commutator, FreePoisson, Law, LevyArea, Semicircle, SquareNorm,
                   cauchy_eval)
from .numerics import find_root

END_CLIP = 1e-4
RESIDUAL_TOL = 1e-9
MASS_LOOSE = (0.98, 1.02)
MASS_TIGHT = (0.999, 1.001)
MIN_POINTS = 50
MAX_REFINE = 4

_TRACEABLE = (SquareNorm, LevyArea, Commutator, Semicircle, FreePoisson)


@dataclass(frozen=True)
class BoundaryRow:
    t: float
    r: float
    x: float
    im_residual: float


@dataclass(frozen=True)
class BoundaryCurve:
    """Solved rows (t, r(t), x = Re K(r e^{it})) ordered by t."""

    law: str
    rows: tuple[BoundaryRow, ...]

    def __post_init__(self):
        for row in self.rows:
            if not row.r > 0:
                raise NumericError(f"boundary radius {row.r} at t={row.t} not positive")
            if abs(row.im_residual) >= RESIDUAL_TOL:
                raise NumericError(f"boundary residual {row.im_residual:.3e} at t={row.t}")

    def __len__(self):
        return len(self.rows)


@dataclass(frozen=True)
class DensityTable:
    """Rows (x, phi) sorted by x; endpoints and validation data in ``meta``."""

    law: str
    x: tuple[float, ...]
    phi: tuple[float, ...]
    left: float
    right: float
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.x)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """x and phi with the endpoints appended (where phi vanishes)."""
        xs = np.concatenate(([self.left], np.asarray(self.x), [self.right]))
        ps = np.concatenate(([0.0], np.asarray(self.phi), [0.0]))
        return xs, ps


def _law_id(law: Law) -> str:
    return law.as_dict()["law"]


def _check_traceable(law: Law) -> None:
    if not isinstance(law, _TRACEABLE):
        raise DomainError(f"no closed-form K to trace for law {_law_id(law)!r}")


def _im_k(law: Law, t: float):
    e = complex(math.cos(t), math.sin(t))
    s = math.sin(t)

    def h(r: float) -> float:
        # divide by sin t (< 0 is fine, only the sign change matters) so that
        # the function stays O(1) as t approaches the real axis
        return law.k(r * e).imag / s

    return h


def _first_root(law: Law, t: float) -> float:
    # scan outward from the pole at the origin for the first sign change
    h = _im_k(law, t)
    r = 1e-3
    prev = h(r)
    while r < 1e4:
        nxt = r * 1.05
        try:
            val = h(nxt)
        except DomainError:
            val = math.nan
        if math.isfinite(val) and (prev < 0) != (val < 0):
            return find_root(h, r, nxt)
        prev, r = val, nxt
    raise NumericError(f"trace_boundary: no root of Im K on the ray t={t}")


def _continued_root(law: Law, t: float, seed: float) -> float:
    h = _im_k(law, t)
    spread = 0.02
    for _ in range(40):
        lo, hi = seed / (1.0 + spread), seed * (1.0 + spread)
        try:
            return find_root(h, lo, hi)
        except BracketError:
            spread *= 1.6
        except DomainError:
            break
    raise NumericError(f"trace_boundary: bracket expansion failed at t={t}")


def _row(law: Law, t: float, r: float) -> BoundaryRow:
    value = law.k(r * complex(math.cos(t), math.sin(t)))
    return BoundaryRow(t=t, r=r, x=value.real, im_residual=value.imag)


def trace_boundary(law: Law, t_grid) -> BoundaryCurve:
    """
    Solve Im K(r e^{it}) = 0 for r at every t of ``t_grid``.

    The sweep starts at the grid point closest to t = 3 pi / 2 (found by a
    radial scan) and continues outward in both directions, each bracket being
    seeded by the neighbouring solution.
    """
    _check_traceable(law)
    ts = [float(t) for t in t_grid]
    if not ts:
        raise ValueError("empty t grid")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t grid must be strictly increasing")
    if ts[0] <= math.pi or ts[-1] >= 2.0 * math.pi:
        raise DomainError("t grid must lie strictly inside (pi, 2 pi)")
    centre = min(range(len(ts)), key=lambda i: abs(ts[i] - 1.5 * math.pi))
    radii: list[float | None] = [None] * len(ts)
    radii[centre] = _first_root(law, ts[centre])
    for i in range(centre + 1, len(ts)):
        radii[i] = _continued_root(law, ts[i], radii[i - 1])
    for i in range(centre - 1, -1, -1):
        radii[i] = _continued_root(law, ts[i], radii[i + 1])
    return BoundaryCurve(_law_id(law), tuple(_row(law, t, r) for t, r in zip(ts, radii)))


def chebyshev_t_grid(npoints: int, clip: float = END_CLIP) -> list[float]:
    """Chebyshev-Lobatto angles on [pi + clip, 2 pi - clip], clustered at the ends."""
    if npoints < 2:
        raise RangeError("need at least two grid points")
    a, b = math.pi + clip, 2.0 * math.pi - clip
    j = np.arange(npoints)
    return list(a + (b - a) * 0.5 * (1.0 - np.cos(np.pi * j / (npoints - 1))))


def _end_value(law: Law, t_end: float, direction: float, seed: float) -> float:
    # x(t) approaches the edge quadratically in the angle, so two evaluations
    # at distance d and 2d from the end give a Richardson estimate
    d = END_CLIP
    vals = []
    r = seed
    for dist in (2 * d, d):
        t = t_end + direction * dist
        r = _continued_root(law, t, r)
        vals.append(law.k(r * complex(math.cos(t), math.sin(t))).real)
    return (4.0 * vals[1] - vals[0]) / 3.0


def _trapezoid(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(x)))


def _build_table(law: Law, npoints: int) -> DensityTable:
    curve = trace_boundary(law, chebyshev_t_grid(npoints))
    xs = np.array([row.x for row in curve.rows])
    phis = np.array([-row.r * math.sin(row.t) / math.pi for row in curve.rows])
    steps = np.diff(xs)
    if np.any(steps <= 0):
        bad = int(np.argmax(steps <= 0))
        raise NumericError(f"density_table: x(t) not increasing at t={curve.rows[bad + 1].t}")
    if np.any(phis <= 0):
        raise NumericError("density_table: non-positive density on the boundary curve")
    left = _end_value(law, math.pi, +1.0, curve.rows[0].r)
    right = _end_value(law, 2.0 * math.pi, -1.0, curve.rows[-1].r)
    left, right = min(left, xs[0]), max(right, xs[-1])
    if law.symmetric:
        edge = 0.5 * (right - left)
        left, right = -edge, edge
    table = DensityTable(_law_id(law), tuple(float(v) for v in xs),
                         tuple(float(v) for v in phis), float(left), float(right))
    return table


def density_table(law: Law, npoints: int = 400, refine: bool = True) -> DensityTable:
    """
    Density table with ``npoints`` rows from the boundary curve.

    The trapezoid mass of the table (endpoints included with zero density)
    must lie in [0.98, 1.02].  When ``refine`` is set and the mass misses
    [0.999, 1.001], the grid is doubled (at most four times) and the finer
    table is returned.  Tables with fewer than 50 rows are returned without
    the mass validation and flagged as such in ``meta``.
    """
    _check_traceable(law)
    if isinstance(law, FreePoisson):
        # the curve Re z = 1/2 is unbounded: the density blows up at x = 0
        raise DomainError("free Poisson density is unbounded at 0; trace t in (3pi/2, 2pi)")
    if npoints < 2:
        raise RangeError("density_table needs at least 2 points")
    table = _build_table(law, npoints)
    mass = table_moment(table, 0)
    meta = {"mass": mass, "validated": npoints >= MIN_POINTS, "refinements": 0,
            "requested_points": npoints}
    if npoints >= MIN_POINTS:
        if not MASS_LOOSE[0] <= mass <= MASS_LOOSE[1]:
            raise NumericError(f"density_table: mass {mass:.6f} outside {MASS_LOOSE}")
        count = npoints
        while refine and not MASS_TIGHT[0] <= mass <= MASS_TIGHT[1]:
            if meta["refinements"] == MAX_REFINE:
                raise NumericError(f"density_table: mass {mass:.6f} after refinement")
            count = 2 * count - 1
            table = _build_table(law, count)
            mass = table_moment(table, 0)
            meta["refinements"] += 1
        meta["mass"] = mass
    return DensityTable(table.law, table.x, table.phi, table.left, table.right, meta)


def stieltjes_density(law: Law, x: float, eps: float = 1e-7) -> float:
    """
    -Im G(x + i eps) / pi, improved by one Richardson step with eps / 2.

    The leading error of the plain value is linear in eps inside the support.
    """
    if not 0 < eps <= 1e-3:
        raise DomainError(f"eps={eps} outside (0, 1e-3]")
    coarse = -cauchy_eval(law, complex(x, eps)).imag / math.pi
    fine = -cauchy_eval(law, complex(x, 0.5 * eps)).imag / math.pi
    return 2.0 * fine - coarse


def table_moment(table: DensityTable, p: int) -> float:
    """Trapezoid value of the p-th moment of the tabulated density."""
    if p < 0 or int(p) != p:
        raise ValueError("moment order must be a non-negative integer")
    xs, ps = table.as_arrays()
    return _trapezoid(xs, xs ** int(p) * ps)


def table_cdf(table: DensityTable, x) -> np.ndarray:
    """Trapezoid CDF of the table at the points ``x``, clamped to [0, 1]."""
    xs, ps = table.as_arrays()
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (ps[1:] + ps[:-1]) * np.diff(xs))))
    return np.clip(np.interp(np.asarray(x, dtype=float), xs, cum, left=0.0, right=cum[-1]),
                   0.0, 1.0)


def _fmt(v: float) -> str:
    return f"{v:.16e}"


def density_csv(table: DensityTable) -> str:
    lines = ["x,phi"]
    lines += [f"{_fmt(x)},{_fmt(p)}" for x, p in zip(table.x, table.phi)]
    return "\n".join(lines) + "\n"


def boundary_csv(curve: BoundaryCurve) -> str:
    lines = ["t,r,x,im_residual"]
    lines += [",".join(_fmt(v) for v in (row.t, row.r, row.x, row.im_residual))
              for row in curve.rows]
    return "\n".join(lines) + "\n"
