"""
Log-likelihood (G²) keyness 통계
- 텍스트 내 lemma 빈도 vs 참조 코퍼스 빈도의 2x2 분할표
- 자유도 1 카이제곱 꼬리 확률로부터 G² 임계값 계산
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.stats import chi2

from errors import StatsError


@dataclass(frozen=True)
class ContingencyCounts:
    """k1/n1: 텍스트 내 빈도/길이, k2/n2: 참조 코퍼스 내 빈도/길이"""

    k1: int
    n1: int
    k2: int
    n2: int

    def __post_init__(self):
        if self.n1 <= 0 or self.n2 <= 0:
            raise StatsError(f"n1, n2는 양수여야 합니다: {self}")
        if not 0 <= self.k1 <= self.n1 or not 0 <= self.k2 <= self.n2:
            raise StatsError(f"0 <= k <= n 조건 위반: {self}")


def _cell(observed: float, expected: float) -> float:
    # 0·log(0) = 0
    if observed == 0:
        return 0.0
    return observed * math.log(observed / expected)


def g2(counts: ContingencyCounts) -> float:
    """Dunning 방식 2x2 log-likelihood 비 통계량 (자연로그)"""
    k1, n1, k2, n2 = counts.k1, counts.n1, counts.k2, counts.n2
    if k1 * n2 == k2 * n1:
        return 0.0

    total = n1 + n2
    hits = k1 + k2
    misses = total - hits
    value = 2.0 * math.fsum((
        _cell(k1, n1 * hits / total),
        _cell(k2, n2 * hits / total),
        _cell(n1 - k1, n1 * misses / total),
        _cell(n2 - k2, n2 * misses / total),
    ))
    return max(value, 0.0)


def log_likelihood(k1: int, n1: int, k2: int, n2: int) -> float:
    return g2(ContingencyCounts(k1, n1, k2, n2))


@lru_cache(maxsize=128)
def g2_threshold(p_value: float) -> float:
    """P(χ²₁ > c) = p 를 만족하는 임계값 c"""
    if not 0.0 < p_value <= 1.0:
        raise StatsError(f"p-value는 (0, 1] 범위여야 합니다: {p_value}")
    if p_value == 1.0:
        return 0.0
    return float(chi2.isf(p_value, df=1))
