"""
Non-crossing partitions and the free moment-cumulant dictionary.

Two independent routes compute moments from free cumulants: the literal sum
over NC(n) (``method="enumerate"``) and the coefficient recursion hidden in
the functional equation M(z) = 1 + z M(z) R(z M(z)) (``method="recursion"``).
The recursion does not care about the number type, so integer or Fraction
inputs give exact results; this is how the meander numbers are produced.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import ArityError, DomainError, NumericError, RangeError
from .numerics import catalan

MAX_ENUMERATE = 14
MAX_MEANDER = 25


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1, ..., n}; blocks are stored sorted, ordered by minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set must be nonempty")
        seen = []
        for block in self.blocks:
            if not block:
                raise ValueError("empty block")
            if list(block) != sorted(block):
                raise ValueError(f"block {block} not sorted; use SetPartition.from_blocks")
            seen.extend(block)
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks do not partition 1..{self.n}")
        if [b[0] for b in self.blocks] != sorted(b[0] for b in self.blocks):
            raise ValueError("blocks must be ordered by their minimum")

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "SetPartition":
        normal = sorted(tuple(sorted(b)) for b in blocks)
        return cls(n, tuple(normal))

    @property
    def profile(self) -> tuple[int, ...]:
        """Block sizes in non-increasing order."""
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))


def is_noncrossing(p: SetPartition) -> bool:
    """True iff no a < b < c < d has a, c in one block and b, d in another."""
    blocks = p.blocks
    for i, u in enumerate(blocks):
        hi = u[-1]
        for v in blocks[i + 1:]:
            # v starts after u's minimum; v crosses u if it has points both
            # strictly inside some gap of u and outside [u[0], hi] or in another gap
            if v[0] > hi:
                continue
            gaps = set()
            outside = False
            for x in v:
                if x > hi:
                    outside = True
                else:
                    # index of the gap of u containing x
                    gaps.add(sum(1 for y in u if y < x))
            if len(gaps) > 1 or (gaps and outside):
                return False
    return True


def _nc_blocks(elements: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
    # recursive generator over NC partitions of an ordered tuple of labels
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    m = len(rest)
    # choose the other members of first's block as an increasing index subset
    def subsets(start):
        yield ()
        for j in range(start, m):
            for tail in subsets(j + 1):
                yield (j,) + tail

    for chosen in subsets(0):
        block = (first,) + tuple(rest[j] for j in chosen)
        cuts = (-1,) + chosen + (m,)
        segments = [rest[cuts[i] + 1:cuts[i + 1]] for i in range(len(cuts) - 1)]
        yield from _combine(block, segments)


def _combine(block, segments):
    if not segments:
        yield [block]
        return
    head, tail = segments[0], segments[1:]
    for part in _nc_blocks(head):
        for others in _combine(block, tail):
            yield part + others


def enumerate_nc(n: int) -> list[SetPartition]:
    """All non-crossing partitions of {1..n} (n <= 14)."""
    if n < 1 or n > MAX_ENUMERATE:
        raise RangeError(f"enumerate_nc: n={n} outside 1..{MAX_ENUMERATE}")
    out = []
    for blocks in _nc_blocks(tuple(range(1, n + 1))):
        out.append(SetPartition(n, tuple(sorted(blocks))))
    return out


def _check_seq(seq: Sequence, n: int, what: str) -> None:
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    if len(seq) < n:
        raise ArityError(f"need {what} up to order {n}, have {len(seq)}")
    for i in range(n):
        if seq[i] is None:
            raise ArityError(f"{what} entry {i + 1} missing")


def _power_rows(moments: list, upto: int, one):
    # rows[s][j] = [z^j] M(z)^s for s <= upto, j <= upto, with m_0 = 1
    m = [one] + list(moments)
    zero = one - one
    rows = [[one] + [zero] * upto]
    for s in range(1, upto + 1):
        prev = rows[-1]
        row = [zero] * (upto + 1)
        for j in range(upto + 1):
            acc = zero
            for i in range(min(j, len(m) - 1) + 1):
                acc += m[i] * prev[j - i]
            row[j] = acc
        rows.append(row)
    return rows


def moment_sequence(k: Sequence, n: int, method: str = "recursion") -> list:
    """Moments m_1..m_n from free cumulants k_1..k_n."""
    _check_seq(k, n, "cumulants")
    if method == "enumerate":
        return [_moment_enumerate(k, j) for j in range(1, n + 1)]
    if method != "recursion":
        raise ValueError(f"unknown method {method!r}")
    one = _one_like(k[0])
    zero = one - one
    m = [one]
    # powers[s][j] = [z^j] M(z)^s, extended one degree at a time
    powers = [[one]] + [[one] for _ in range(n)]
    for j in range(1, n + 1):
        acc = zero
        for s in range(1, j + 1):
            acc += k[s - 1] * powers[s][j - s]
        m.append(acc)
        powers[0].append(zero)
        for s in range(1, n + 1):
            prev = powers[s - 1]
            c = zero
            for i in range(j + 1):
                c += m[i] * prev[j - i]
            powers[s].append(c)
    return m[1:]


def _moment_enumerate(k: Sequence, n: int):
    total = 0
    for p in enumerate_nc(n):
        term = 1
        for block in p.blocks:
            term *= k[len(block) - 1]
        total += term
    return total


def moments_from_cumulants(k: Sequence, n: int, method: str = "recursion"):
    """m_n = sum over pi in NC(n) of prod_{V in pi} k_|V|."""
    return moment_sequence(k, n, method)[-1]


def cumulant_sequence(m: Sequence, n: int) -> list:
    """Free cumulants k_1..k_n from moments m_1..m_n (Moebius inversion)."""
    _check_seq(m, n, "moments")
    one = _one_like(m[0])
    moments = list(m[:n])
    rows = _power_rows(moments[:n - 1], n, one)
    k: list = []
    for j in range(1, n + 1):
        acc = moments[j - 1]
        for s in range(1, j):
            acc -= k[s - 1] * rows[s][j - s]
        k.append(acc)
    return k


def cumulants_from_moments(m: Sequence, n: int):
    """k_n such that the NC moment-cumulant relation holds up to order n."""
    return cumulant_sequence(m, n)[-1]


def _one_like(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return 1
    return 1.0


def kreweras_count(n: int, profile: Sequence[int]) -> int:
    """Number of NC partitions of {1..n} whose block sizes form ``profile``."""
    if any(int(s) != s or s < 1 for s in profile) or sum(profile) != n:
        raise DomainError(f"profile {tuple(profile)} is not a composition of {n}")
    blocks = len(profile)
    denom = math.factorial(n - blocks + 1)
    for mult in Counter(profile).values():
        denom *= math.factorial(mult)
    return math.factorial(n) // denom


def meander_numbers(M: int) -> list[int]:
    """
    Counts q_1..q_M of 2-irreducible meanders, defined as the even free
    cumulants of the law with even moments C_k**2 and vanishing odd moments.

    The inversion runs in exact integer arithmetic; the result is asserted to
    be integral with vanishing odd cumulants.
    """
    if M < 1 or M > MAX_MEANDER:
        raise RangeError(f"meander_numbers: M={M} outside 1..{MAX_MEANDER}")
    moments = []
    for j in range(1, 2 * M + 1):
        moments.append(Fraction(catalan(j // 2) ** 2) if j % 2 == 0 else Fraction(0))
    k = cumulant_sequence(moments, 2 * M)
    q = []
    for j, value in enumerate(k, start=1):
        if value.denominator != 1:
            raise NumericError(f"cumulant {j} = {value} is not integral")
        if j % 2 == 1:
            if value != 0:
                raise NumericError(f"odd cumulant {j} = {value} does not vanish")
        else:
            q.append(int(value))
    return q


def _series_mul(a: list[float], b: list[float], deg: int) -> list[float]:
    out = [0.0] * (deg + 1)
    for i, ai in enumerate(a[:deg + 1]):
        if ai == 0.0:
            continue
        for j in range(deg + 1 - i):
            out[i + j] += ai * b[j]
    return out


def gf_consistency(M: int) -> float:
    """
    Largest relative coefficient mismatch in M(z) = 1 + z M R(z M) and in
    M(z) = Q(z M) through order 2M, using float copies of the meander
    numbers and of the moments C_k**2.
    """
    q = [float(v) for v in meander_numbers(M)]
    deg = 2 * M
    mom = [0.0] * (deg + 1)
    mom[0] = 1.0
    for k in range(1, M + 1):
        mom[2 * k] = float(catalan(k)) ** 2
    zm = [0.0] + mom[:deg]           # z M(z)
    # R(u) = sum q_n u^{2n-1}, Q(u) = 1 + sum q_n u^{2n}
    powers = [[1.0] + [0.0] * deg]
    for _ in range(deg):
        powers.append(_series_mul(powers[-1], zm, deg))
    r_of = [0.0] * (deg + 1)
    q_of = [0.0] * (deg + 1)
    q_of[0] = 1.0
    for n, qn in enumerate(q, start=1):
        if 2 * n - 1 <= deg:
            for j in range(deg + 1):
                r_of[j] += qn * powers[2 * n - 1][j]
        if 2 * n <= deg:
            for j in range(deg + 1):
                q_of[j] += qn * powers[2 * n][j]
    rhs1 = _series_mul(zm, r_of, deg)
    rhs1[0] += 1.0
    err = 0.0
    for j in range(deg + 1):
        scale = max(1.0, abs(mom[j]))
        err = max(err, abs(mom[j] - rhs1[j]) / scale, abs(mom[j] - q_of[j]) / scale)
    return err
