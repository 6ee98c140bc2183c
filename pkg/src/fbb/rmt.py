"""
Random-matrix models of the bridge functionals.

Independent GUE matrices are asymptotically free standard semicirculars, so
the series representations

    Gamma = (1/pi^2) sum_n eta_n^2 / n^2,
    ell   = i sum_n (xi_n eta_n - eta_n xi_n) / n,
    Z     = sum_n (xi_n (x) eta_n - eta_n (x) xi_n) / n,

truncated after M modes, give matrices whose spectra approximate the laws.
The module also holds the in-repo Hermitian eigensolver (Householder
reduction to a real tridiagonal matrix followed by implicit-shift QL), a
Nystrom check of the bridge covariance eigenvalues, and a KS distance.

Randomness comes from a counter-based generator keyed by (seed, stream);
multi-sample runs use streams ``stream, stream + 1, ...`` in order, and the
reduction over samples walks the streams in that order, so results do not
depend on the number of worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg.blas import zherk

from .density import DensityTable, table_cdf
from .errors import DomainError, NumericError, RangeError

QL_MAX_ITER = 50
MAX_TENSOR_DIM = 16
MODE_BATCH = 100

_MASK64 = (1 << 64) - 1


# ---------------------------------------------------------------------------
# randomness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RngSpec:
    """Key of a Philox counter stream: (seed, stream) fixes every draw."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64:
            raise RangeError("seed must fit in 64 bits")
        if not 0 <= self.stream <= _MASK64:
            raise RangeError("stream must fit in 64 bits")

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed, self.stream], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def spawn(self, index: int) -> "RngSpec":
        return RngSpec(self.seed, (self.stream + index) & _MASK64)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Dense Hermitian matrix; conj-symmetry is enforced exactly."""

    data: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        a = self.data
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("HermitianMatrix needs a square array")
        if not np.all(np.isfinite(a)):
            raise NumericError("non-finite matrix entry")
        if not np.array_equal(a, a.conj().T):
            raise ValueError("matrix is not exactly Hermitian")

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @classmethod
    def from_upper(cls, a: np.ndarray, meta: dict | None = None) -> "HermitianMatrix":
        """Build from the upper triangle of ``a`` (the lower one is ignored)."""
        a = np.asarray(a, dtype=complex)
        upper = np.triu(a, 1)
        full = upper + upper.conj().T + np.diag(a.diagonal().real)
        return cls(full, dict(meta or {}))

    def normalized_trace_powers(self, orders: Sequence[int]) -> list[float]:
        lam = np.asarray(eigenvalues(self))
        return [float(np.mean(lam ** p)) for p in orders]


def _gue_batch(gen: np.random.Generator, count: int, n: int,
               scale: np.ndarray | None = None) -> np.ndarray:
    """
    ``count`` GUE matrices with E|H_ij|^2 = 1/n, optionally multiplied by
    ``scale[j]``.

    From one real Gaussian array X, H = ((1+i) X + (1-i) X^T) / (2 sqrt n):
    the real part (X + X^T) and imaginary part (X - X^T) have independent
    off-diagonal entries, the diagonal is real, and conj-symmetry holds
    bit for bit because both parts are formed from the same pair of floats.
    """
    x = gen.standard_normal((count, n, n))
    factor = np.full(count, 0.5 / math.sqrt(n)) if scale is None else scale * (0.5 / math.sqrt(n))
    x *= factor[:, None, None]
    # a contiguous copy of the transpose makes the two passes below streaming
    xt = np.ascontiguousarray(np.swapaxes(x, 1, 2))
    h = np.empty((count, n, n), dtype=complex)
    np.add(x, xt, out=h.real)
    np.subtract(x, xt, out=h.imag)
    return h


def _ginibre_batch(gen: np.random.Generator, count: int, n: int) -> np.ndarray:
    """i.i.d. complex Gaussian entries with E|P_ij|^2 = 1/n."""
    x = gen.standard_normal((count, n, 2 * n))
    return x.view(np.complex128) / math.sqrt(2.0 * n)


def sample_gue(n: int, rng: RngSpec) -> HermitianMatrix:
    """N x N GUE matrix normalised so that E (1/N) tr H^2 = 1."""
    if n < 2:
        raise RangeError("GUE dimension must be >= 2")
    return HermitianMatrix(_gue_batch(rng.generator(), 1, n)[0], {"model": "gue", "N": n})


# ---------------------------------------------------------------------------
# eigensolver
# ---------------------------------------------------------------------------

def tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Householder reduction of a Hermitian matrix to a real symmetric
    tridiagonal one with the same spectrum.

    Returns the diagonal d (length n) and the off-diagonal e (length n-1).
    Each reflector maps the column below the diagonal onto alpha e_1; the
    phases of alpha are removed by a diagonal unitary similarity, so the
    off-diagonal entries are |alpha| >= 0.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    d = np.zeros(n)
    e = np.zeros(max(n - 1, 0))
    for k in range(n - 1):
        x = a[k + 1:, k]
        norm = np.linalg.norm(x)
        d[k] = a[k, k].real
        if norm == 0.0:
            e[k] = 0.0
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        alpha = -phase * norm
        v = x.copy()
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        e[k] = abs(alpha)
        if vnorm == 0.0:
            continue
        v /= vnorm
        sub = a[k + 1:, k + 1:]
        p = sub @ v
        kappa = np.vdot(v, p).real
        w = p - kappa * v
        sub -= 2.0 * (np.outer(v, w.conj()) + np.outer(w, v.conj()))
    d[n - 1] = a[n - 1, n - 1].real
    return d, e


def tql_eigenvalues(d: Sequence[float], e: Sequence[float]) -> list[float]:
    """Eigenvalues of a real symmetric tridiagonal matrix by implicit QL."""
    d = [float(v) for v in d]
    n = len(d)
    e = [float(v) for v in e] + [0.0]
    if len(e) != n:
        raise ValueError("off-diagonal must have length n - 1")
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 1e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            if it == QL_MAX_ITER:
                raise NumericError(f"QL did not converge for eigenvalue {l} "
                                   f"after {QL_MAX_ITER} iterations")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return sorted(d)


def eigenvalues(h) -> list[float]:
    """Sorted eigenvalues of a Hermitian matrix (in-repo Householder + QL)."""
    a = h.data if isinstance(h, HermitianMatrix) else np.asarray(h)
    if a.shape[0] == 1:
        return [float(a[0, 0].real)]
    d, e = tridiagonalize(a)
    return tql_eigenvalues(d, e)


def eigenpair_residual(h, lam: float, iters: int = 3) -> float:
    """max |H v - lam v| for v from inverse iteration at ``lam`` (unit v)."""
    a = h.data if isinstance(h, HermitianMatrix) else np.asarray(h, dtype=complex)
    n = a.shape[0]
    shift = lam + 1e-10 * (1.0 + abs(lam))
    v = np.ones(n, dtype=complex) / math.sqrt(n)
    for _ in range(iters):
        v = np.linalg.solve(a - shift * np.eye(n), v)
        v /= np.linalg.norm(v)
    return float(np.max(np.abs(a @ v - lam * v)))


# ---------------------------------------------------------------------------
# matrix models
# ---------------------------------------------------------------------------

def _check_model(n: int, m: int) -> None:
    if n < 2:
        raise RangeError("matrix dimension must be >= 2")
    if m < 10:
        raise RangeError("need at least 10 modes")


def _gram_sum(stack: np.ndarray) -> np.ndarray:
    # stack has shape (k, n, n); returns upper triangle of sum_j A_j^H A_j.
    # The C-ordered (k n, n) array is the Fortran-ordered transpose, so the
    # BLAS call A A^H on it produces conj(sum A_j^H A_j) without copying.
    k, n, _ = stack.shape
    tall = np.ascontiguousarray(stack).reshape(k * n, n)
    return np.conj(zherk(1.0, tall.T, trans=0))


def _accumulate_upper(total: np.ndarray, part: np.ndarray) -> None:
    total += np.triu(part)


def square_norm_truncation(m: int) -> float:
    """Mean deficit sum_{n > M} 1/(n^2 pi^2) of the M-mode model."""
    return (math.pi ** 2 / 6.0 - sum(1.0 / (j * j) for j in range(1, m + 1))) / math.pi ** 2


def simulate_gamma(n: int, m: int, rng: RngSpec, batch: int = MODE_BATCH) -> HermitianMatrix:
    """
    (1/pi^2) sum_{j <= M} eta_j^2 / j^2 for independent GUE eta_j.

    Since eta_j is Hermitian, eta_j^2 = eta_j^H eta_j and the weighted sum is
    one Gram product of the stacked sqrt(c_j) eta_j, evaluated in batches.
    """
    _check_model(n, m)
    gen = rng.generator()
    total = np.zeros((n, n), dtype=complex)
    for start in range(1, m + 1, batch):
        idx = np.arange(start, min(start + batch, m + 1))
        eta = _gue_batch(gen, len(idx), n, scale=1.0 / (math.pi * idx))
        _accumulate_upper(total, _gram_sum(eta))
    meta = {"model": "gamma", "N": n, "M": m, "seed": rng.seed, "stream": rng.stream,
            "mean_deficit": square_norm_truncation(m)}
    return HermitianMatrix.from_upper(total, meta)


def levy_area_truncation(m: int) -> float:
    """Variance deficit 2 sum_{n > M} 1/n^2 of the M-mode model."""
    return 2.0 * (math.pi ** 2 / 6.0 - sum(1.0 / (j * j) for j in range(1, m + 1)))


def simulate_levy_area(n: int, m: int, rng: RngSpec, batch: int = MODE_BATCH,
                       method: str = "ginibre") -> HermitianMatrix:
    """
    i sum_{j <= M} (xi_j eta_j - eta_j xi_j) / j for independent GUE xi_j, eta_j.

    ``method="direct"`` forms the commutators literally.  ``method="ginibre"``
    uses P_j = (xi_j + i eta_j)/sqrt 2, for which P^H P - P P^H equals
    i (xi eta - eta xi) identically; P_j has i.i.d. complex Gaussian entries,
    so it is drawn directly and the sum becomes two Gram products.
    """
    _check_model(n, m)
    gen = rng.generator()
    total = np.zeros((n, n), dtype=complex)
    for start in range(1, m + 1, batch):
        idx = np.arange(start, min(start + batch, m + 1))
        weight = (1.0 / idx)[:, None, None]
        if method == "ginibre":
            p = _ginibre_batch(gen, len(idx), n) * np.sqrt(weight)
            part = _gram_sum(p) - _gram_sum(np.conj(np.swapaxes(p, 1, 2)))
        elif method == "direct":
            xi = _gue_batch(gen, len(idx), n)
            eta = _gue_batch(gen, len(idx), n)
            comm = np.matmul(xi, eta)
            comm = comm - np.conj(np.swapaxes(comm, 1, 2))   # eta xi = (xi eta)^H
            part = (1j * comm * weight).sum(axis=0)
        else:
            raise ValueError(f"unknown method {method!r}")
        _accumulate_upper(total, part)
    meta = {"model": "levy-area", "N": n, "M": m, "seed": rng.seed, "stream": rng.stream,
            "variance_deficit": levy_area_truncation(m), "method": method}
    return HermitianMatrix.from_upper(total, meta)


def simulate_semicircle(n: int, m: int, rng: RngSpec) -> HermitianMatrix:
    """A single GUE matrix; ``m`` is accepted for interface symmetry."""
    h = sample_gue(n, rng)
    return HermitianMatrix(h.data, {"model": "semicircle", "N": n, "M": m,
                                    "seed": rng.seed, "stream": rng.stream})


def _signature_matrix(gen: np.random.Generator, n: int, m: int) -> np.ndarray:
    dim = n * n
    z = np.zeros((dim, dim), dtype=complex)
    for j in range(1, m + 1):
        xi, eta = _gue_batch(gen, 2, n)
        # (xi (x) eta)^H = xi (x) eta, so the difference is already Hermitian
        z += (np.kron(xi, eta) - np.kron(eta, xi)) / j
    return z


def _trace_powers(z: np.ndarray, orders: Sequence[int]) -> list[float]:
    dim = z.shape[0]
    cache = {1: z}

    def power(p):
        if p not in cache:
            half = power(p // 2)
            cache[p] = half @ half if p % 2 == 0 else half @ power(p - p // 2)
        return cache[p]

    return [float(np.trace(power(p)).real / dim) if p > 0 else 1.0 for p in orders]


def signature_moment_samples(n: int, m: int, samples: int, rng: RngSpec,
                             orders: Sequence[int]) -> np.ndarray:
    """Per-sample normalised traces (1/N^2) tr Z^p; shape (samples, len(orders))."""
    if n > MAX_TENSOR_DIM:
        raise RangeError(f"tensor model materialises N^2 x N^2 matrices; N={n} > "
                         f"{MAX_TENSOR_DIM}")
    if n < 2 or m < 1 or samples < 1:
        raise RangeError("need N >= 2, M >= 1 and at least one sample")
    if any(p < 0 or p > 6 for p in orders):
        raise RangeError("moment orders must lie in 0..6")
    out = np.empty((samples, len(orders)))
    for s in range(samples):
        gen = rng.spawn(s).generator()
        out[s] = _trace_powers(_signature_matrix(gen, n, m), orders)
    return out


def signature_spectrum(n: int, m: int, samples: int, rng: RngSpec,
                       orders: Sequence[int] = (1, 2, 3, 4)) -> SpectrumSample:
    """Pooled spectrum of the Kronecker model of Z with per-sample trace moments."""
    if n > MAX_TENSOR_DIM:
        raise RangeError(f"tensor model needs N <= {MAX_TENSOR_DIM}")
    pooled, moments = [], []
    for s in range(samples):
        z = _signature_matrix(rng.spawn(s).generator(), n, m)
        lam = np.asarray(eigenvalues(HermitianMatrix.from_upper(z)))
        pooled.append(lam)
        moments.append([float(np.mean(lam ** p)) for p in orders])
    meta = {"law": "signature", "N": n, "M": m, "samples": samples, "seed": rng.seed,
            "stream": rng.stream}
    return SpectrumSample(np.sort(np.concatenate(pooled)), np.array(moments),
                          tuple(orders), meta)


def simulate_signature_moments(n: int, m: int, samples: int, rng: RngSpec,
                               orders: Sequence[int]) -> list[float]:
    """Sample means of (1/N^2) tr Z^p for the Kronecker model of Z."""
    return [float(v) for v in signature_moment_samples(n, m, samples, rng, orders).mean(axis=0)]


# ---------------------------------------------------------------------------
# pooled spectra
# ---------------------------------------------------------------------------

MODELS = {"gamma": simulate_gamma, "levy-area": simulate_levy_area,
          "semicircle": simulate_semicircle}


@dataclass(frozen=True, eq=False)
class SpectrumSample:
    """Pooled sorted eigenvalues with per-sample normalised trace moments."""

    eigenvalues: np.ndarray
    trace_moments: np.ndarray          # shape (samples, orders)
    orders: tuple[int, ...]
    meta: dict

    def __post_init__(self):
        lam = self.eigenvalues
        if lam.size == 0:
            raise ValueError("empty spectrum")
        if np.any(np.diff(lam) < 0):
            raise ValueError("eigenvalues must be sorted")

    def moment_estimates(self) -> list[tuple[float, float]]:
        """(mean, standard error) of each trace moment over the samples."""
        t = self.trace_moments
        count = t.shape[0]
        err = t.std(axis=0, ddof=1) / math.sqrt(count) if count > 1 else np.full(t.shape[1], math.inf)
        return [(float(a), float(b)) for a, b in zip(t.mean(axis=0), err)]


def _one_sample(args):
    law, n, m, seed, stream, orders = args
    h = MODELS[law](n, m, RngSpec(seed, stream))
    lam = np.asarray(eigenvalues(h))
    return lam, [float(np.mean(lam ** p)) for p in orders]


def sample_spectrum(law: str, n: int, m: int, samples: int, rng: RngSpec,
                    orders: Sequence[int] = (1, 2, 3, 4), workers: int = 1) -> SpectrumSample:
    """
    Pool the spectra of ``samples`` independent model matrices.

    Sample s uses stream ``rng.stream + s``; results are gathered in stream
    order, so the output is the same for any worker count.
    """
    if law not in MODELS:
        raise DomainError(f"no matrix model for law {law!r}")
    if samples < 1:
        raise RangeError("need at least one sample")
    jobs = [(law, n, m, rng.seed, rng.spawn(s).stream, tuple(orders)) for s in range(samples)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_one_sample, jobs))
    else:
        results = [_one_sample(job) for job in jobs]
    lam = np.sort(np.concatenate([r[0] for r in results]))
    moments = np.array([r[1] for r in results])
    meta = {"law": law, "N": n, "M": m, "samples": samples, "seed": rng.seed,
            "stream": rng.stream}
    return SpectrumSample(lam, moments, tuple(orders), meta)


def ks_distance(sample, table: DensityTable) -> float:
    """Sup distance between the empirical CDF of ``sample`` and the table CDF."""
    lam = sample.eigenvalues if isinstance(sample, SpectrumSample) else np.sort(np.asarray(sample, dtype=float))
    if lam.size == 0:
        raise ValueError("empty sample")
    f = table_cdf(table, lam)
    count = lam.size
    upper = np.arange(1, count + 1) / count
    lower = np.arange(0, count) / count
    return float(max(np.max(np.abs(upper - f)), np.max(np.abs(f - lower))))


def empirical_ks(sample: np.ndarray, reference: np.ndarray) -> float:
    """Two-sided sup distance between two empirical CDFs."""
    a = np.sort(np.asarray(sample, dtype=float))
    b = np.sort(np.asarray(reference, dtype=float))
    grid = np.concatenate((a, b))
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def histogram(sample: SpectrumSample, table: DensityTable | None, bins: int = 50):
    """
    Rows (lo, hi, count, empirical density, analytic bin-average density);
    the analytic column is NaN when no table is given.
    """
    lam = sample.eigenvalues
    lo, hi = float(lam[0]), float(lam[-1])
    if table is not None:
        lo, hi = min(lo, table.left), max(hi, table.right)
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(lam, bins=edges)
    width = np.diff(edges)
    cdf = table_cdf(table, edges) if table is not None else np.full(bins + 1, np.nan)
    rows = []
    for i in range(bins):
        rows.append((float(edges[i]), float(edges[i + 1]), int(counts[i]),
                     float(counts[i] / (lam.size * width[i])),
                     float((cdf[i + 1] - cdf[i]) / width[i])))
    return rows


# ---------------------------------------------------------------------------
# further checks of the matrix realisation
# ---------------------------------------------------------------------------

def bridge_at(n: int, m: int, t: float, rng: RngSpec) -> HermitianMatrix:
    """
    Matrix bridge on [0, 2 pi] from the truncated Levy series
    sum_j [(cos(jt) - 1) xi_j + sin(jt) eta_j] / (j sqrt(pi)).
    """
    _check_model(n, m)
    gen = rng.generator()
    total = np.zeros((n, n), dtype=complex)
    for start in range(1, m + 1, MODE_BATCH):
        idx = np.arange(start, min(start + MODE_BATCH, m + 1))
        xi = _gue_batch(gen, len(idx), n)
        eta = _gue_batch(gen, len(idx), n)
        a = (np.cos(idx * t) - 1.0) / (idx * math.sqrt(math.pi))
        b = np.sin(idx * t) / (idx * math.sqrt(math.pi))
        total += np.tensordot(a, xi, axes=1) + np.tensordot(b, eta, axes=1)
    return HermitianMatrix.from_upper(total, {"model": "bridge", "t": t, "N": n, "M": m})


def bridge_variance(t: float, m: int | None = None) -> float:
    """phi(beta(t)^2) = t - t^2/(2 pi), or its M-mode truncation."""
    if m is None:
        return t - t * t / (2.0 * math.pi)
    j = np.arange(1, m + 1)
    return float(np.sum(((np.cos(j * t) - 1.0) ** 2 + np.sin(j * t) ** 2) / (j * j * math.pi)))


def alternating_moment(n: int, rng: RngSpec) -> float:
    """(1/N) tr(xi eta xi eta) for two independent GUE matrices."""
    xi, eta = _gue_batch(rng.generator(), 2, n)
    prod = xi @ eta
    return float(np.trace(prod @ prod).real / n)


def mercer_nystrom(nodes: int, count: int) -> list[float]:
    """
    Largest ``count`` eigenvalues of the integral operator with kernel
    min(s, t) - s t on [0, 1], by the Nystrom method with trapezoid weights
    on a uniform grid (symmetrised as W^1/2 K W^1/2).
    """
    if nodes < 100:
        raise RangeError("need at least 100 nodes")
    if not 1 <= count <= 10:
        raise RangeError("count must lie in 1..10")
    t = np.linspace(0.0, 1.0, nodes)
    h = 1.0 / (nodes - 1)
    w = np.full(nodes, h)
    w[0] = w[-1] = 0.5 * h
    k = np.minimum.outer(t, t) - np.outer(t, t)
    sw = np.sqrt(w)
    a = sw[:, None] * k * sw[None, :]
    lam = eigenvalues(a.astype(complex))
    top = sorted(lam, reverse=True)[:count]
    if any(v <= 0 for v in top):
        raise NumericError("non-positive Nystrom eigenvalue")
    return top
