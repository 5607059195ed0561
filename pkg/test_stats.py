"""
G² 통계량 / 임계값 테스트
"""

import math

import numpy as np
import pytest

from errors import StatsError
from stats import ContingencyCounts, g2, g2_threshold, log_likelihood


def _xlogx(x: int) -> float:
    return x * math.log(x) if x > 0 else 0.0


def g2_oracle(k1: int, n1: int, k2: int, n2: int) -> float:
    """엔트로피 형태의 2x2 log-likelihood 비 (구현과 독립적인 계산)"""
    a, b, c, d = k1, k2, n1 - k1, n2 - k2
    return 2.0 * (
        _xlogx(a) + _xlogx(b) + _xlogx(c) + _xlogx(d)
        - _xlogx(a + b) - _xlogx(c + d) - _xlogx(a + c) - _xlogx(b + d)
        + _xlogx(a + b + c + d)
    )


def chi2_tail_inverse(p: float) -> float:
    """P(χ²₁ > c) = erfc(√(c/2)) 를 이분법으로 역산"""
    lo, hi = 0.0, 100.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if math.erfc(math.sqrt(mid / 2)) > p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_equal_proportions_is_zero():
    assert g2(ContingencyCounts(5, 100, 50, 1000)) == 0.0


def test_zero_counts_is_zero():
    assert g2(ContingencyCounts(0, 100, 0, 100)) == 0.0


def test_known_value_matches_oracle():
    assert log_likelihood(10, 100, 10, 1000) == pytest.approx(g2_oracle(10, 100, 10, 1000), rel=1e-9)


def test_randomized_oracle_equivalence():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        n1 = int(rng.integers(1, 5000))
        n2 = int(rng.integers(1, 50000))
        k1 = int(rng.integers(0, n1 + 1))
        k2 = int(rng.integers(0, n2 + 1))
        expected = g2_oracle(k1, n1, k2, n2)
        assert log_likelihood(k1, n1, k2, n2) == pytest.approx(expected, rel=1e-9, abs=1e-8)


def test_symmetry_and_non_negativity():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n1, n2 = int(rng.integers(1, 300)), int(rng.integers(1, 300))
        k1, k2 = int(rng.integers(0, n1 + 1)), int(rng.integers(0, n2 + 1))
        forward = log_likelihood(k1, n1, k2, n2)
        assert forward >= 0.0
        assert forward == pytest.approx(log_likelihood(k2, n2, k1, n1), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("counts", [(1, 0, 0, 10), (11, 10, 0, 10), (0, 10, -1, 10)])
def test_invalid_counts_rejected(counts):
    with pytest.raises(StatsError):
        ContingencyCounts(*counts)


@pytest.mark.parametrize("p, expected", [(0.05, 3.841), (0.15, 2.072)])
def test_threshold_calibration(p, expected):
    assert g2_threshold(p) == pytest.approx(expected, abs=1e-3)
    assert g2_threshold(p) == pytest.approx(chi2_tail_inverse(p), abs=1e-6)


def test_threshold_of_one_is_zero():
    assert g2_threshold(1.0) == 0.0


def test_threshold_strictly_decreasing():
    values = [g2_threshold(p) for p in (0.01, 0.05, 0.15, 0.5, 0.9, 1.0)]
    assert all(a > b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("p", [0.0, -0.1, 1.5])
def test_threshold_out_of_range(p):
    with pytest.raises(StatsError):
        g2_threshold(p)
