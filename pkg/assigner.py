"""
디스크립터 할당기
새 문서의 LemmaVector와 각 AssociateList의 유사도로 디스크립터 순위를 매긴다.

  (1) 공유 associate 수 ≥ min_associates_present 인 디스크립터만 후보
  (2) (선택) 라벨이 본문에 등장하는 후보만 유지
  (3) cosine / okapi / dot 세 가지 점수 계산
  (4) 점수 계열마다 후보 집합 기준 min-max 정규화
  (5) 가중 선형 결합 후 정렬, top_k 개로 자름
"""

import logging
import math
from dataclasses import dataclass
from typing import AbstractSet, List, Mapping, Optional, Tuple

import numpy as np

from corpus import CorpusStats
from errors import AssignmentError
from preprocess import LemmaVector
from trainer import AssociateList, Model

logger = logging.getLogger(__name__)

# 정규화 점수의 해상도. 가중치를 c배 했을 때 생기는 부동소수점 오차를 반올림으로 흡수한다.
# 오차가 사라지는 것은 아니어서 반올림 경계에 걸친 값은 스케일에 따라 마지막 자리가 달라질 수 있다.
SCORE_DECIMALS = 9


@dataclass(frozen=True)
class AssignConfig:
    min_associates_present: int = 4
    combo_weights: Tuple[float, float, float] = (0.4, 0.2, 0.4)
    okapi_k1: float = 2.0
    okapi_b: float = 0.75
    top_k: int = 8
    require_label_in_text: bool = False
    language: str = "en"

    def __post_init__(self):
        object.__setattr__(self, "combo_weights", tuple(float(w) for w in self.combo_weights))
        if len(self.combo_weights) != 3:
            raise AssignmentError(f"combo_weights는 (cos, okapi, dot) 3개 값이어야 합니다: {self.combo_weights}")
        if any(w < 0 for w in self.combo_weights) or abs(math.fsum(self.combo_weights) - 1.0) > 1e-9:
            raise AssignmentError(f"combo_weights는 음수가 아니고 합이 1이어야 합니다: {self.combo_weights}")
        if self.min_associates_present < 1:
            raise AssignmentError(f"min_associates_present는 1 이상이어야 합니다: {self.min_associates_present}")
        if self.top_k < 1:
            raise AssignmentError(f"top_k는 1 이상이어야 합니다: {self.top_k}")
        if self.okapi_k1 < 0 or not 0.0 <= self.okapi_b <= 1.0:
            raise AssignmentError(f"okapi 파라미터 범위 오류: k1={self.okapi_k1}, b={self.okapi_b}")

    def to_dict(self) -> dict:
        return {
            "min_associates_present": self.min_associates_present,
            "combo_weights": list(self.combo_weights),
            "okapi_k1": self.okapi_k1,
            "okapi_b": self.okapi_b,
            "top_k": self.top_k,
            "require_label_in_text": self.require_label_in_text,
            "language": self.language,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "AssignConfig":
        values = dict(data)
        if "combo_weights" in values:
            values["combo_weights"] = tuple(values["combo_weights"])
        return cls(**values)


@dataclass(frozen=True)
class AssignmentResult:
    document_id: str
    ranked: Tuple[Tuple[str, float], ...] = ()

    @property
    def descriptor_ids(self) -> List[str]:
        return [d for d, _ in self.ranked]


# ---------------------------------------------------------------------------
# 유사도 함수
# ---------------------------------------------------------------------------

def _shared(vector: LemmaVector, associates: AssociateList) -> List[Tuple[int, float]]:
    weights = associates.weights
    return [(count, weights[lemma]) for lemma, count in vector.counts.items() if lemma in weights]


def cosine_sim(vector: LemmaVector, associates: AssociateList) -> float:
    shared = _shared(vector, associates)
    if not shared:
        return 0.0
    v_norm = math.sqrt(math.fsum(c * c for c in vector.counts.values()))
    denominator = v_norm * associates.norm
    if denominator == 0:
        return 0.0
    value = math.fsum(c * w for c, w in shared) / denominator
    return min(1.0, max(0.0, value))


def dot_sim(vector: LemmaVector, associates: AssociateList) -> float:
    """정규화하지 않은 내적"""
    return math.fsum(c * w for c, w in _shared(vector, associates))


def okapi_sim(
    vector: LemmaVector,
    associates: AssociateList,
    reference: CorpusStats,
    k1: float = 2.0,
    b: float = 0.75,
) -> float:
    """associate 가중치를 질의어 가중치로 쓰는 Okapi BM25"""
    if reference.avg_doc_length <= 0:
        raise AssignmentError(f"참조 코퍼스 평균 문서 길이가 0입니다: {reference.avg_doc_length}")
    shared = _shared(vector, associates)
    if not shared:
        return 0.0
    norm = k1 * (1.0 - b + b * (vector.length / reference.avg_doc_length))
    return math.fsum(w * tf * (k1 + 1.0) / (tf + norm) for tf, w in shared)


def _min_max(values: np.ndarray) -> np.ndarray:
    """후보 집합 기준 min-max 정규화

    값이 모두 같으면(상대 오차 1e-9 이내) 0. 단, 후보가 하나뿐이고 값이 양수이면 1.
    """
    lo, hi = values.min(), values.max()
    if hi - lo <= 1e-9 * abs(hi):
        sole_positive = len(values) == 1 and hi > 0
        return np.full_like(values, 1.0 if sole_positive else 0.0)
    return np.round((values - lo) / (hi - lo), SCORE_DECIMALS)


# ---------------------------------------------------------------------------
# 할당
# ---------------------------------------------------------------------------

def candidate_descriptors(vector: LemmaVector, model: Model, min_present: int) -> List[str]:
    """공유 associate(서로 다른 lemma) 수가 기준 이상인 디스크립터"""
    candidates = []
    for descriptor_id in model.descriptor_ids:
        weights = model.associate_lists[descriptor_id].weights
        present = sum(1 for lemma in vector.counts if lemma in weights)
        if present >= min_present:
            candidates.append(descriptor_id)
    return candidates


def assign(
    vector: LemmaVector,
    model: Model,
    config: Optional[AssignConfig] = None,
    labels_in_text: Optional[AbstractSet[str]] = None,
    document_id: str = "",
) -> AssignmentResult:
    """문서 벡터 → 순위가 매겨진 디스크립터 목록

    labels_in_text: 라벨이 본문에 등장하는 디스크립터 ID 집합 (require_label_in_text 사용 시 필수)
    """
    config = config or AssignConfig()
    if len(model) == 0:
        raise AssignmentError("빈 모델로는 할당할 수 없습니다")

    candidates = candidate_descriptors(vector, model, config.min_associates_present)
    if config.require_label_in_text:
        if labels_in_text is None:
            raise AssignmentError("require_label_in_text 사용 시 라벨 조회 결과가 필요합니다")
        candidates = [d for d in candidates if d in labels_in_text]

    if not candidates:
        logger.debug(f"[ASSIGN] {document_id}: 후보 디스크립터 없음")
        return AssignmentResult(document_id, ())

    reference = model.reference_stats
    lists = [model.associate_lists[d] for d in candidates]
    cos = np.array([cosine_sim(vector, a) for a in lists])
    okapi = np.array([okapi_sim(vector, a, reference, config.okapi_k1, config.okapi_b) for a in lists])
    dot = np.array([dot_sim(vector, a) for a in lists])

    w_cos, w_okapi, w_dot = config.combo_weights
    normalized = zip(_min_max(cos), _min_max(okapi), _min_max(dot))
    scored = []
    for descriptor_id, (c, o, d) in zip(candidates, normalized):
        combined = math.fsum((w_cos * c, w_okapi * o, w_dot * d))
        scored.append((descriptor_id, round(min(1.0, max(0.0, combined)), SCORE_DECIMALS)))

    scored.sort(key=lambda item: (-item[1], item[0]))
    return AssignmentResult(document_id, tuple(scored[:config.top_k]))


def format_assignment(
    result: AssignmentResult,
    labels: Optional[Mapping[str, str]] = None,
) -> str:
    """순위 / 라벨(대문자) / 백분율 점수 표"""
    lines = []
    for rank, (descriptor_id, score) in enumerate(result.ranked, 1):
        label = labels.get(descriptor_id) if labels else None
        name = label.upper() if label else descriptor_id
        lines.append(f"{rank}\t{name}\t{score * 100:.1f}%")
    return "\n".join(lines)
