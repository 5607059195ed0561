"""
전처리 / 베이스라인 비교 실험
- 전처리 변형(LEM, SW, MW 조합과 불용어 목록 종류)마다 학습 후 평가
- 라벨 일치 베이스라인 옵션 조합마다 추출 후 평가
- 결과는 하나의 리포트(표 + JSON)로 모은다
"""

import logging
from dataclasses import asdict, dataclass, field, replace
from itertools import product
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from assigner import AssignConfig
from baseline import BaselineExtractor, BaselineOptions
from corpus import Corpus
from evaluator import DEFAULT_RANKS, EvalReport, LabelLookup, evaluate, evaluate_rankings, normalize_ranks
from preprocess import PreprocessConfig
from thesaurus import Thesaurus
from trainer import TrainingConfig, train_with_summary

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreprocessVariant:
    name: str
    config: PreprocessConfig

    @property
    def settings(self) -> Dict[str, Any]:
        return {
            "use_lemmas": self.config.use_lemmas,
            "use_stopwords": self.config.use_stopwords,
            "stopword_kind": self.config.stopword_kind if self.config.use_stopwords else None,
            "use_multiwords": self.config.use_multiwords,
        }


@dataclass
class VariantResult:
    name: str
    settings: Dict[str, Any]
    report: EvalReport
    trained: Optional[int] = None

    def to_dict(self) -> dict:
        data = {"variant": self.name, "settings": self.settings}
        if self.trained is not None:
            data["trained"] = self.trained
        data["evaluation"] = self.report.to_dict()
        return data


@dataclass
class ExperimentReport:
    preprocessing: List[VariantResult] = field(default_factory=list)
    baseline: List[VariantResult] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "preprocessing": [r.to_dict() for r in self.preprocessing],
            "baseline": [r.to_dict() for r in self.baseline],
        }

    def format_table(self) -> str:
        """변형별 F@rank (백분율, 소수점 한 자리)"""
        results = self.preprocessing + self.baseline
        if not results:
            return ""
        ranks = sorted(results[0].report.rows)
        lines = ["Variant\tTrained\t" + "\t".join(f"F@{k}" for k in ranks)]
        for r in results:
            trained = "-" if r.trained is None else str(r.trained)
            scores = "\t".join(f"{r.report.rows[k].f_measure * 100:.1f}" for k in ranks)
            lines.append(f"{r.name}\t{trained}\t{scores}")
        return "\n".join(lines)


def preprocess_variants(
    base: PreprocessConfig,
    stoplists: Optional[Mapping[str, FrozenSet[str]]] = None,
) -> List[PreprocessVariant]:
    """base에 실린 리소스로 만들 수 있는 LEM/SW/MW 조합

    stoplists: 불용어 목록 종류 → 목록. 없으면 base의 목록 하나만 사용.
    리소스가 없는 단계는 켜지 않는다.
    """
    if stoplists is None:
        stoplists = {base.stopword_kind: base.stopwords} if base.stopwords else {}
    lemma_options = (False, True) if base.lemma_dictionary else (False,)
    multiword_options = (False, True) if base.multiwords else (False,)
    stop_options: Tuple[Optional[str], ...] = (None,) + tuple(sorted(stoplists))

    variants = []
    for use_lemmas, kind, use_multiwords in product(lemma_options, stop_options, multiword_options):
        parts = []
        if use_lemmas:
            parts.append("LEM")
        if kind is not None:
            parts.append(f"SW:{kind}")
        if use_multiwords:
            parts.append("MW")
        config = replace(
            base,
            use_lemmas=use_lemmas,
            use_stopwords=kind is not None,
            stopwords=stoplists[kind] if kind is not None else base.stopwords,
            stopword_kind=kind if kind is not None else base.stopword_kind,
            use_multiwords=use_multiwords,
        )
        variants.append(PreprocessVariant("+".join(parts) or "plain", config))
    return variants


def baseline_option_sets() -> List[Tuple[str, BaselineOptions]]:
    """라벨 일치 추출의 LEM / SW / 비디스크립터 사용 여부 8가지 조합"""
    sets = []
    for use_lemmas, use_stopwords, use_non_descriptors in product((False, True), repeat=3):
        parts = ["label"]
        if use_non_descriptors:
            parts.append("ND")
        if use_lemmas:
            parts.append("LEM")
        if use_stopwords:
            parts.append("SW")
        sets.append(("+".join(parts), BaselineOptions(use_lemmas, use_stopwords, use_non_descriptors)))
    return sets


def _empty_report(test: Corpus, ranks: Sequence[int]) -> EvalReport:
    return evaluate_rankings((((), doc.gold_descriptors) for doc in test), ranks)


def run_preprocessing_ablation(
    train: Corpus,
    test: Corpus,
    variants: Sequence[PreprocessVariant],
    training: Optional[TrainingConfig] = None,
    assign_config: Optional[AssignConfig] = None,
    ranks: Sequence[int] = DEFAULT_RANKS,
    progress: bool = False,
    label_lookup: Optional[LabelLookup] = None,
) -> List[VariantResult]:
    """변형마다 같은 train/test 분할로 학습 후 평가"""
    training = training or TrainingConfig()
    ranks = normalize_ranks(ranks)
    results = []
    for variant in variants:
        logger.info(f"[ABLATE] 전처리 변형: {variant.name}")
        model, summary = train_with_summary(train, replace(training, preprocess=variant.config), progress)
        if len(model) == 0:
            logger.warning(f"[WARN] {variant.name}: 학습된 디스크립터가 없어 모든 점수를 0으로 기록합니다")
            report = _empty_report(test, ranks)
        else:
            report = evaluate(model, test, assign_config, ranks,
                              preprocess_config=variant.config, label_lookup=label_lookup,
                              workers=training.workers)
        results.append(VariantResult(variant.name, variant.settings, report, len(summary.trained)))
    return results


def run_baseline_variants(
    test: Corpus,
    thesaurus: Thesaurus,
    lang: str,
    preprocess_config: Optional[PreprocessConfig] = None,
    option_sets: Optional[Sequence[Tuple[str, BaselineOptions]]] = None,
    ranks: Sequence[int] = DEFAULT_RANKS,
) -> List[VariantResult]:
    """옵션 조합마다 라벨 일치 추출 후 같은 평가기로 채점"""
    ranks = normalize_ranks(ranks)
    results = []
    for name, options in option_sets or baseline_option_sets():
        extractor = BaselineExtractor(thesaurus, lang, options, preprocess_config)
        rankings = ((extractor.extract_ranked(doc.text), doc.gold_descriptors) for doc in test)
        report = evaluate_rankings(rankings, ranks)
        results.append(VariantResult(name, asdict(options), report))
        logger.debug(f"[ABLATE] 베이스라인 {name} 완료")
    return results
