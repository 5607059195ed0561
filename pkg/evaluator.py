"""
순위 기반 Precision / Recall / F 평가
문서별로 계산한 뒤 문서 단위 평균(macro)을 낸다.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import AbstractSet, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from assigner import AssignConfig, assign
from corpus import Corpus, Document
from errors import EvaluationError
from preprocess import PreprocessConfig, preprocess
from trainer import Model

logger = logging.getLogger(__name__)

DEFAULT_RANKS = (1, 3, 5, 8, 10, 11)

# 본문 → 라벨이 등장하는 디스크립터 ID 집합
LabelLookup = Callable[[str], AbstractSet[str]]


@dataclass(frozen=True)
class RankScores:
    precision: float
    recall: float
    f_measure: float


@dataclass
class EvalReport:
    rows: Dict[int, RankScores] = field(default_factory=dict)
    documents_evaluated: int = 0
    documents_skipped_empty_gold: int = 0

    def to_dict(self) -> dict:
        return {
            "documents_evaluated": self.documents_evaluated,
            "documents_skipped_empty_gold": self.documents_skipped_empty_gold,
            "ranks": [
                {"rank": k, "precision": s.precision, "recall": s.recall, "f_measure": s.f_measure}
                for k, s in sorted(self.rows.items())
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "EvalReport":
        rows = {
            int(r["rank"]): RankScores(float(r["precision"]), float(r["recall"]), float(r["f_measure"]))
            for r in data["ranks"]
        }
        return cls(rows, int(data["documents_evaluated"]), int(data["documents_skipped_empty_gold"]))

    def format_table(self) -> str:
        """rank / P / R / F (백분율, 소수점 한 자리)"""
        lines = ["Rank\tP\tR\tF"]
        for k, s in sorted(self.rows.items()):
            lines.append(f"{k}\t{s.precision * 100:.1f}\t{s.recall * 100:.1f}\t{s.f_measure * 100:.1f}")
        return "\n".join(lines)


def f_measure(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def pr_at_rank(ranked: Sequence[str], gold: AbstractSet[str], k: int) -> Tuple[float, float, float]:
    """상위 k개 기준 (P, R, F). 제안 수가 k보다 적으면 s = |ranked| 로 나눈다."""
    if not gold:
        raise EvaluationError("gold 집합이 비어 있으면 recall을 정의할 수 없습니다")
    if k < 1:
        raise EvaluationError(f"rank는 1 이상이어야 합니다: {k}")
    if len(set(ranked)) != len(ranked):
        raise EvaluationError(f"순위 목록에 중복된 디스크립터가 있습니다: {list(ranked)}")

    suggested = list(ranked[:k])
    hits = sum(1 for d in suggested if d in gold)
    precision = hits / len(suggested) if suggested else 0.0
    recall = hits / len(gold)
    return precision, recall, f_measure(precision, recall)


def normalize_ranks(ranks: Sequence[int]) -> Tuple[int, ...]:
    """중복 제거 + 오름차순 정렬 (rank 하나는 리포트 행 하나)"""
    unique = tuple(sorted(set(int(k) for k in ranks)))
    if not unique or unique[0] < 1:
        raise EvaluationError(f"rank 목록이 올바르지 않습니다: {list(ranks)}")
    return unique


def evaluate_rankings(
    rankings: Iterable[Tuple[Sequence[str], AbstractSet[str]]],
    ranks: Sequence[int] = DEFAULT_RANKS,
) -> EvalReport:
    """(순위 목록, gold) 쌍들의 macro 평균. gold가 빈 문서는 건너뛰고 따로 센다."""
    ranks = normalize_ranks(ranks)
    per_rank: Dict[int, List[Tuple[float, float, float]]] = {k: [] for k in ranks}
    evaluated = skipped = 0
    for ranked, gold in rankings:
        if not gold:
            skipped += 1
            continue
        evaluated += 1
        for k in ranks:
            per_rank[k].append(pr_at_rank(ranked, gold, k))

    if skipped:
        logger.warning(f"[WARN] gold 디스크립터가 없는 문서 {skipped}개를 평가에서 제외했습니다")
    if evaluated == 0:
        raise EvaluationError("평가할 문서가 없습니다 (모든 문서의 gold가 비어 있음)")

    rows = {}
    for k, values in per_rank.items():
        rows[k] = RankScores(
            precision=math.fsum(v[0] for v in values) / evaluated,
            recall=math.fsum(v[1] for v in values) / evaluated,
            f_measure=math.fsum(v[2] for v in values) / evaluated,
        )
    return EvalReport(rows, evaluated, skipped)


def evaluate(
    model: Model,
    test: Corpus,
    config: Optional[AssignConfig] = None,
    ranks: Sequence[int] = DEFAULT_RANKS,
    preprocess_config: Optional[PreprocessConfig] = None,
    label_lookup: Optional[LabelLookup] = None,
    workers: int = 1,
) -> EvalReport:
    """테스트 코퍼스 전체에 할당을 수행하고 gold와 비교"""
    config = config or AssignConfig()
    if len(test) == 0:
        raise EvaluationError("테스트 코퍼스가 비어 있습니다")
    ranks = normalize_ranks(ranks)
    preprocess_config = preprocess_config or model.training_config.preprocess
    # 순위 목록은 가장 큰 rank까지만 필요
    ranked_config = config
    if max(ranks) > config.top_k:
        ranked_config = replace(config, top_k=max(ranks))

    documents = [doc for doc in test if doc.gold_descriptors]

    def ranking_of(doc: Document) -> Tuple[Sequence[str], AbstractSet[str]]:
        vector = preprocess(doc.text, preprocess_config)
        labels = label_lookup(doc.text) if label_lookup else None
        result = assign(vector, model, ranked_config, labels, doc.id)
        return result.descriptor_ids, doc.gold_descriptors

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rankings = list(executor.map(ranking_of, documents))
    else:
        rankings = [ranking_of(doc) for doc in documents]

    skipped = [((), doc.gold_descriptors) for doc in test if not doc.gold_descriptors]
    report = evaluate_rankings(rankings + skipped, ranks)
    logger.info(f"[EVAL] {report.documents_evaluated}개 문서 평가 완료")
    return report
