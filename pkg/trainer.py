"""
Associate 리스트 학습기
디스크립터마다 (lemma, weight) 벡터를 만든다.

  Weight(l,d) = W(l,d) · IDF(l)
  W(l,d)      = Σ_{t ∈ T(l,d)} 1 / Nd_t
  IDF(l)      = ln(Max_DF / (β · DF_l) + 1)

Phase 1 (디스크립터별 독립, 병렬 가능): 텍스트별 G² 후보 → W 누적
Phase 2 (동기화 지점): DF 집계 → IDF → 최종 가중치 → 임계값/최소 개수 필터
"""

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import AbstractSet, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from corpus import Corpus, CorpusStats, Document, preprocess_corpus, stats_from_vectors
from errors import TrainingError
from preprocess import LemmaVector, PreprocessConfig, preprocess_digest
from stats import ContingencyCounts, g2, g2_threshold

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class TrainingConfig:
    """학습 파라미터 (기본값은 최적 운영점)"""

    min_texts_per_descriptor: int = 5
    min_chars_per_text: int = 2000
    p_value: float = 0.15
    min_texts_per_lemma: int = 2
    beta: float = 10.0
    min_associate_weight: float = 0.0
    min_associates_per_descriptor: int = 10
    workers: int = 1
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)

    def __post_init__(self):
        for name in ("min_texts_per_descriptor", "min_chars_per_text", "min_texts_per_lemma",
                     "min_associates_per_descriptor", "workers"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise TrainingError(f"{name}는 1 이상의 정수여야 합니다: {value!r}")
        if not 0.0 < self.p_value <= 1.0:
            raise TrainingError(f"p_value는 (0, 1] 범위여야 합니다: {self.p_value}")
        if self.beta <= 0:
            raise TrainingError(f"beta는 양수여야 합니다: {self.beta}")
        if self.min_associate_weight < 0:
            raise TrainingError(f"min_associate_weight는 0 이상이어야 합니다: {self.min_associate_weight}")

    def to_dict(self) -> dict:
        data = {k: v for k, v in asdict(self).items() if k != "preprocess"}
        data["preprocess"] = self.preprocess.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Mapping) -> "TrainingConfig":
        values = {k: v for k, v in data.items() if k != "preprocess"}
        for name in ("p_value", "beta", "min_associate_weight"):
            if name in values:
                values[name] = float(values[name])
        return cls(preprocess=PreprocessConfig.from_dict(data.get("preprocess", {})), **values)


@dataclass(frozen=True)
class AssociateEntry:
    lemma: str
    weight: float
    supporting_text_count: int
    raw_frequency: int


@dataclass(frozen=True)
class AssociateList:
    """디스크립터 하나의 associate 목록 (가중치 내림차순, 동률은 lemma 순)"""

    descriptor_id: str
    entries: Tuple[AssociateEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def weights(self) -> Dict[str, float]:
        return {e.lemma: e.weight for e in self.entries}

    @cached_property
    def norm(self) -> float:
        return math.sqrt(math.fsum(e.weight * e.weight for e in self.entries))


@dataclass(frozen=True)
class PhaseOneEntry:
    w: float
    text_count: int
    raw_frequency: int


@dataclass(frozen=True)
class Model:
    associate_lists: Mapping[str, AssociateList]
    training_config: TrainingConfig
    reference_stats: CorpusStats
    format_version: int = FORMAT_VERSION
    preprocess_digest: str = ""

    def __len__(self) -> int:
        return len(self.associate_lists)

    @property
    def descriptor_ids(self) -> List[str]:
        return sorted(self.associate_lists)


@dataclass
class TrainingSummary:
    """학습 결과 요약 (CLI train 리포트)"""

    trained: List[str] = field(default_factory=list)
    skipped_insufficient_texts: Dict[str, int] = field(default_factory=dict)
    skipped_few_associates: Dict[str, int] = field(default_factory=dict)
    documents_used: int = 0
    vocabulary_size: int = 0

    def to_dict(self) -> dict:
        return {
            "trained_count": len(self.trained),
            "trained": sorted(self.trained),
            "skipped_insufficient_texts": dict(sorted(self.skipped_insufficient_texts.items())),
            "skipped_few_associates": dict(sorted(self.skipped_few_associates.items())),
            "documents_used": self.documents_used,
            "vocabulary_size": self.vocabulary_size,
        }


# ---------------------------------------------------------------------------
# 최소 요건 (a)
# ---------------------------------------------------------------------------

def qualifying_texts(corpus: Corpus, config: TrainingConfig) -> Dict[str, List[Document]]:
    """디스크립터 → 길이 조건을 만족하는 학습 문서 목록 (코퍼스 순서 유지)"""
    texts: Dict[str, List[Document]] = {}
    for doc in corpus:
        if len(doc.text) < config.min_chars_per_text:
            continue
        for descriptor_id in doc.gold_descriptors:
            texts.setdefault(descriptor_id, []).append(doc)
    return texts


def eligible_descriptors(corpus: Corpus, config: TrainingConfig) -> Set[str]:
    return {
        d for d, docs in qualifying_texts(corpus, config).items()
        if len(docs) >= config.min_texts_per_descriptor
    }


# ---------------------------------------------------------------------------
# Phase 1
# ---------------------------------------------------------------------------

def text_candidates(vector: LemmaVector, reference: CorpusStats, p_value: float) -> Set[str]:
    """참조 코퍼스보다 과대표되고 G² ≥ 임계값인 lemma 집합"""
    if not vector or reference.total_lemma_count <= 0:
        return set()
    threshold = g2_threshold(p_value)
    n1, n2 = vector.length, reference.total_lemma_count

    candidates = set()
    for lemma, k1 in vector.counts.items():
        k2 = reference.count(lemma)
        # k1/n1 > k2/n2
        if k1 * n2 <= k2 * n1:
            continue
        if g2(ContingencyCounts(k1, n1, k2, n2)) >= threshold:
            candidates.add(lemma)
    return candidates


def accumulate_w(
    descriptor_id: str,
    training_texts: Sequence[Tuple[LemmaVector, int, AbstractSet[str]]],
    min_texts_per_lemma: int = 2,
) -> Dict[str, PhaseOneEntry]:
    """F2: lemma가 후보로 나온 텍스트마다 1/Nd_t 를 더한다"""
    shares: Dict[str, List[float]] = {}
    raw: Counter = Counter()
    for vector, nd, candidates in training_texts:
        if nd < 1:
            raise TrainingError(f"Nd_t는 1 이상이어야 합니다: descriptor={descriptor_id}, Nd_t={nd}")
        raw.update(vector.counts)
        for lemma in candidates:
            shares.setdefault(lemma, []).append(1.0 / nd)

    return {
        lemma: PhaseOneEntry(w=math.fsum(parts), text_count=len(parts), raw_frequency=raw[lemma])
        for lemma, parts in shares.items()
        if len(parts) >= min_texts_per_lemma
    }


# ---------------------------------------------------------------------------
# Phase 2
# ---------------------------------------------------------------------------

def compute_idf(df: Mapping[str, int], beta: float) -> Dict[str, float]:
    """F3: IDF_l = ln(Max_DF / (β · DF_l) + 1)"""
    if not df:
        raise TrainingError("DF 테이블이 비어 있습니다")
    if beta <= 0:
        raise TrainingError(f"beta는 양수여야 합니다: {beta}")
    max_df = max(df.values())
    idf = {}
    for lemma, value in df.items():
        if value < 1:
            raise TrainingError(f"DF는 1 이상이어야 합니다: {lemma}={value}")
        idf[lemma] = math.log(max_df / (beta * value) + 1.0)
    return idf


def _sorted_entries(entries: List[AssociateEntry]) -> Tuple[AssociateEntry, ...]:
    return tuple(sorted(entries, key=lambda e: (-e.weight, e.lemma)))


def train_with_summary(
    corpus: Corpus,
    config: Optional[TrainingConfig] = None,
    progress: bool = False,
) -> Tuple[Model, TrainingSummary]:
    """코퍼스 → (Model, TrainingSummary)"""
    config = config or TrainingConfig()
    if len(corpus) == 0:
        raise TrainingError("빈 코퍼스로는 학습할 수 없습니다")

    summary = TrainingSummary()
    digest = preprocess_digest(config.preprocess)

    logger.info(f"[TRAIN] 전처리 시작: {len(corpus)}개 문서")
    vectors = preprocess_corpus(corpus, config.preprocess, config.workers)
    # 참조 코퍼스 = 학습 코퍼스 전체 (텍스트 자신 포함)
    reference = stats_from_vectors(vectors[doc.id] for doc in corpus)

    texts_by_descriptor = qualifying_texts(corpus, config)
    eligible = []
    for descriptor_id in sorted(texts_by_descriptor):
        count = len(texts_by_descriptor[descriptor_id])
        if count >= config.min_texts_per_descriptor:
            eligible.append(descriptor_id)
        else:
            summary.skipped_insufficient_texts[descriptor_id] = count
    logger.info(f"[TRAIN] 학습 대상 디스크립터 {len(eligible)}개 "
                f"(학습 문서 부족으로 제외 {len(summary.skipped_insufficient_texts)}개)")

    used_docs = sorted({doc.id for d in eligible for doc in texts_by_descriptor[d]})
    summary.documents_used = len(used_docs)

    def candidates_of(doc_id: str) -> Set[str]:
        return text_candidates(vectors[doc_id], reference, config.p_value)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            candidate_sets = dict(zip(used_docs, executor.map(candidates_of, used_docs)))
    else:
        candidate_sets = {doc_id: candidates_of(doc_id) for doc_id in used_docs}

    def phase_one(descriptor_id: str) -> Dict[str, PhaseOneEntry]:
        docs = texts_by_descriptor[descriptor_id]
        return accumulate_w(
            descriptor_id,
            [(vectors[doc.id], len(doc.gold_descriptors), candidate_sets[doc.id]) for doc in docs],
            config.min_texts_per_lemma,
        )

    iterator = tqdm(eligible, desc="Phase 1", disable=not progress)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            phase_one_maps = dict(zip(eligible, executor.map(phase_one, iterator)))
    else:
        phase_one_maps = {d: phase_one(d) for d in iterator}

    # 동기화 지점: DF는 Phase 1 associate 맵 소속 여부로 계산
    df: Counter = Counter()
    for entries in phase_one_maps.values():
        df.update(entries.keys())
    summary.vocabulary_size = len(df)

    associate_lists: Dict[str, AssociateList] = {}
    if df:
        idf = compute_idf(df, config.beta)
        for descriptor_id in eligible:
            entries = [
                AssociateEntry(lemma, p1.w * idf[lemma], p1.text_count, p1.raw_frequency)
                for lemma, p1 in phase_one_maps[descriptor_id].items()
            ]
            entries = [e for e in entries if e.weight > 0 and e.weight >= config.min_associate_weight]
            if len(entries) < config.min_associates_per_descriptor:
                summary.skipped_few_associates[descriptor_id] = len(entries)
                logger.debug(f"[TRAIN] {descriptor_id}: associate {len(entries)}개 → 제외")
                continue
            associate_lists[descriptor_id] = AssociateList(descriptor_id, _sorted_entries(entries))
            summary.trained.append(descriptor_id)
    else:
        summary.skipped_few_associates.update({d: 0 for d in eligible})

    if not associate_lists:
        logger.warning("[WARN] 학습된 디스크립터가 없습니다. 빈 모델을 반환합니다.")
    else:
        logger.info(f"[OK] {len(associate_lists)}개 디스크립터 학습 완료 "
                    f"(associate 부족으로 제외 {len(summary.skipped_few_associates)}개)")

    model = Model(
        associate_lists=associate_lists,
        training_config=config,
        reference_stats=reference,
        format_version=FORMAT_VERSION,
        preprocess_digest=digest,
    )
    return model, summary


def train(corpus: Corpus, config: Optional[TrainingConfig] = None) -> Model:
    model, _ = train_with_summary(corpus, config)
    return model
