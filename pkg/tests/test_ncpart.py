import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fbb.errors import ArityError, DomainError, RangeError
from fbb.ncpart import (SetPartition, cumulant_sequence, cumulants_from_moments, enumerate_nc,
                        gf_consistency, is_noncrossing, kreweras_count, meander_numbers,
                        moment_sequence, moments_from_cumulants)
from fbb.numerics import catalan


def _all_partitions(n):
    # restricted growth strings: an independent generator of every set partition
    def grow(prefix, top):
        if len(prefix) == n:
            yield prefix
            return
        for label in range(top + 2):
            yield from grow(prefix + [label], max(top, label))
    for labels in grow([0], 0):
        blocks = {}
        for i, lab in enumerate(labels, start=1):
            blocks.setdefault(lab, []).append(i)
        yield SetPartition.from_blocks(n, blocks.values())


def _crosses(p):
    owner = {x: i for i, b in enumerate(p.blocks) for x in b}
    for a, b, c, d in itertools.combinations(range(1, p.n + 1), 4):
        if owner[a] == owner[c] and owner[b] == owner[d] and owner[a] != owner[b]:
            return True
    return False


def test_figure_style_examples():
    nc = SetPartition.from_blocks(12, [{8}, {9}, {10, 7, 6}, {11, 5}, {12, 4, 3, 2, 1}])
    assert is_noncrossing(nc)
    # 11 must be placed somewhere to make a partition of 1..12
    cr = SetPartition.from_blocks(12, [{5, 1}, {8}, {9, 3}, {10, 7, 6}, {12, 4, 2}, {11}])
    assert not is_noncrossing(cr)
    with pytest.raises(ValueError):
        SetPartition.from_blocks(12, [{5, 1}, {8}, {9, 3}, {10, 7, 6}, {12, 4, 2}])


def test_partition_validation():
    with pytest.raises(ValueError):
        SetPartition(3, ((1, 3), (2, 2)))
    with pytest.raises(ValueError):
        SetPartition(3, ((2,), (1, 3)))
    with pytest.raises(ValueError):
        SetPartition(2, ((2, 1),))
    assert SetPartition.from_blocks(4, [{4, 1}, {2}, {3}]).profile == (2, 1, 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_matches_brute_force(n):
    brute = {p for p in _all_partitions(n) if not _crosses(p)}
    got = enumerate_nc(n)
    assert len(got) == len(set(got)) == catalan(n)
    assert set(got) == brute
    assert all(is_noncrossing(p) for p in got)


def test_is_noncrossing_agrees_with_definition():
    for p in _all_partitions(6):
        assert is_noncrossing(p) == (not _crosses(p))


def test_catalan_counts_larger():
    for n in (9, 10):
        assert len(enumerate_nc(n)) == catalan(n)
    with pytest.raises(RangeError):
        enumerate_nc(15)


@pytest.mark.parametrize("n", range(1, 9))
def test_kreweras_counts_match_enumeration(n):
    counts = {}
    for p in enumerate_nc(n):
        counts[p.profile] = counts.get(p.profile, 0) + 1
    for profile, c in counts.items():
        assert kreweras_count(n, profile) == c
    assert sum(counts.values()) == catalan(n)


def test_kreweras_bad_profile():
    with pytest.raises(DomainError):
        kreweras_count(4, (2, 1))
    with pytest.raises(DomainError):
        kreweras_count(3, (0, 3))


def test_known_moments():
    # semicircle of variance 1: Catalan moments; free Poisson: Catalan numbers
    k = [0, 1] + [0] * 8
    assert moment_sequence(k, 10) == [0, 1, 0, 2, 0, 5, 0, 14, 0, 42]
    assert moment_sequence([1] * 8, 8) == [catalan(n) for n in range(1, 9)]
    assert moments_from_cumulants([1, 1, 1, 1], 4, method="enumerate") == 14


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=7), min_size=1,
                max_size=8))
@settings(max_examples=60, deadline=None)
def test_exact_round_trip(k):
    n = len(k)
    m = moment_sequence(k, n)
    assert m == moment_sequence(k, n, method="enumerate")
    assert cumulant_sequence(m, n) == k


@given(st.lists(st.floats(-2, 2), min_size=1, max_size=10))
@settings(max_examples=100, deadline=None)
def test_float_round_trip(k):
    n = len(k)
    back = cumulant_sequence(moment_sequence(k, n), n)
    m = moment_sequence(k, n)
    scale = max(1.0, max(abs(v) for v in m))
    assert max(abs(a - b) for a, b in zip(back, k)) < 1e-10 * scale


def test_cumulants_from_moments_last_entry():
    m = [Fraction(0), Fraction(1), Fraction(0), Fraction(3)]   # Gaussian moments
    assert cumulants_from_moments(m, 4) == 1   # classical k_4 = 0, free k_4 = 3 - 2 = 1


def test_arity_errors():
    with pytest.raises(ArityError):
        moment_sequence([1, 2], 3)
    with pytest.raises(ArityError):
        cumulant_sequence([1, None, 3], 3)
    with pytest.raises(ValueError):
        moment_sequence([1], 1, method="bogus")


def test_meanders_head():
    assert meander_numbers(8) == [1, 2, 8, 46, 322, 2546, 21870, 199494]


def test_meanders_by_brute_force():
    # even free cumulants of the law with even moments C_k^2, summed directly
    for n in range(1, 5):
        k = [Fraction(0)] * (2 * n)
        for j in range(1, 2 * n + 1):
            mom = Fraction(catalan(j // 2) ** 2) if j % 2 == 0 else Fraction(0)
            rest = 0
            for p in enumerate_nc(j):
                if len(p.blocks) == 1:
                    continue
                term = Fraction(1)
                for b in p.blocks:
                    term *= k[len(b) - 1]
                rest += term
            k[j - 1] = mom - rest
        assert int(k[2 * n - 1]) == meander_numbers(n)[-1]


def test_meander_growth_and_consistency():
    q = meander_numbers(12)
    roots = [v ** (1.0 / (2 * n)) for n, v in enumerate(q, start=1)]
    assert all(a < b for a, b in zip(roots, roots[1:]))
    assert roots[-1] < math.pi / (4 - math.pi)
    assert gf_consistency(12) < 1e-9
    with pytest.raises(RangeError):
        meander_numbers(26)
