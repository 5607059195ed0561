"""
디스크립터 색인 에이전트
- 코퍼스 분할 / 학습 / 할당 / 평가 / 키워드 추출 베이스라인
- 결과는 output_dir 아래 JSON 리포트로 저장
"""

import logging
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from assigner import AssignmentResult, assign
from baseline import BaselineExtractor, BaselineOptions
from corpus import Corpus, filter_language, load_corpus, save_corpus, split_stratified
from errors import AssignmentError, ConfigError, UnknownDescriptorError
from evaluator import DEFAULT_RANKS, EvalReport, evaluate, evaluate_rankings
from experiments import ExperimentReport, preprocess_variants, run_baseline_variants, run_preprocessing_ablation
from model_store import RunConfig, load_model, save_model, write_json
from preprocess import preprocess, preprocess_digest
from thesaurus import Thesaurus, load_thesaurus
from trainer import Model, TrainingSummary, train_with_summary

logger = logging.getLogger(__name__)


def format_associates(
    model: Model,
    descriptor_id: str,
    label: Optional[str] = None,
    top_n: Optional[int] = None,
) -> str:
    """associate 목록 표: 순위 / lemma / 원빈도 / 지지 텍스트 수 / 가중치"""
    if descriptor_id not in model.associate_lists:
        raise UnknownDescriptorError(descriptor_id)
    entries = model.associate_lists[descriptor_id].entries
    if top_n is not None:
        entries = entries[:top_n]
    lines = [f"{(label or descriptor_id).upper()} ({descriptor_id})",
             "Rank\tLemma\tFreq\tTexts\tWeight"]
    for rank, e in enumerate(entries, 1):
        lines.append(f"{rank}\t{e.lemma}\t{e.raw_frequency}\t{e.supporting_text_count}\t{e.weight:.2f}")
    return "\n".join(lines)


class IndexingAgent:
    """설정(RunConfig) 하나로 학습부터 평가까지 수행하는 에이전트"""

    MODEL_FILENAME = "model.json"

    def __init__(self, config: RunConfig, output_dir: Optional[Union[str, Path]] = None):
        self.config = config
        self.output_dir = Path(output_dir or config.paths.output_dir)
        self.thesaurus: Optional[Thesaurus] = None
        self.model: Optional[Model] = None

        # 출력 폴더 생성
        self.output_dir.mkdir(parents=True, exist_ok=True)

    # ------------------------------------------------------------------
    # 리소스 로드
    # ------------------------------------------------------------------

    def _require_path(self, value: Optional[Union[str, Path]], key: str) -> Path:
        if value is None:
            raise ConfigError(f"paths.{key} 경로가 지정되지 않았습니다")
        path = Path(value)
        if not path.exists():
            raise ConfigError(f"paths.{key} 파일이 없습니다: {path}")
        return path

    def load_thesaurus(self, path: Optional[Union[str, Path]] = None) -> Thesaurus:
        self.thesaurus = load_thesaurus(self._require_path(path or self.config.paths.thesaurus, "thesaurus"))
        return self.thesaurus

    def load_model(self, path: Optional[Union[str, Path]] = None) -> Model:
        self.model = load_model(self._require_path(path or self.config.paths.model, "model"))
        return self.model

    def load_corpus(self, path: Optional[Union[str, Path]] = None) -> Corpus:
        corpus = load_corpus(self._require_path(path or self.config.paths.corpus, "corpus"))
        if self.config.corpus.language:
            corpus = filter_language(corpus, self.config.corpus.language)
        return corpus

    @property
    def model_path(self) -> Path:
        return Path(self.config.paths.model or self.output_dir / self.MODEL_FILENAME)

    def labels(self) -> Dict[str, str]:
        """디스크립터 ID → 할당 언어 라벨 (시소러스가 없으면 빈 dict)"""
        if self.thesaurus is None:
            return {}
        lang = self.config.assign.language
        return {d: self.thesaurus.label(d, lang) for d in self.thesaurus.descriptors}

    def _label_extractor(self) -> Optional[BaselineExtractor]:
        if not self.config.assign.require_label_in_text:
            return None
        if self.thesaurus is None:
            raise ConfigError("require_label_in_text 사용 시 시소러스(paths.thesaurus)가 필요합니다")
        options = BaselineOptions(use_lemmas=self.config.preprocess.use_lemmas)
        return BaselineExtractor(self.thesaurus, self.config.assign.language, options, self.config.preprocess)

    # ------------------------------------------------------------------
    # 분할 / 학습
    # ------------------------------------------------------------------

    def split(self, corpus: Corpus) -> Tuple[Path, Path]:
        """문서 유형별 층화 분할 후 train.jsonl / test.jsonl 저장"""
        train_part, test_part = split_stratified(corpus, self.config.split.test_fraction, self.config.split.seed)
        train_path = save_corpus(train_part, self.output_dir / "train.jsonl")
        test_path = save_corpus(test_part, self.output_dir / "test.jsonl")
        logger.info(f"[SPLIT] train {len(train_part)}개 / test {len(test_part)}개")
        return train_path, test_path

    def train(self, corpus: Corpus, progress: bool = False) -> TrainingSummary:
        """학습 후 모델 파일과 학습 요약 저장"""
        self.model, summary = train_with_summary(corpus, self.config.training, progress=progress)
        save_model(self.model, self.model_path)
        self.save_results_report(summary.to_dict(), "train_summary.json")
        return summary

    # ------------------------------------------------------------------
    # 할당 / 평가
    # ------------------------------------------------------------------

    def check_digest(self, ignore_digest: bool = False):
        """모델의 전처리 파이프라인이 현재 설정과 같은지 확인"""
        active = preprocess_digest(self.config.preprocess)
        if self.model.preprocess_digest == active:
            return
        if ignore_digest:
            logger.warning("[WARN] 전처리 설정이 모델과 다르지만 --ignore-digest로 계속 진행합니다")
            return
        raise AssignmentError(
            f"모델의 전처리 설정이 현재 설정과 다릅니다 "
            f"(model={self.model.preprocess_digest[:12]}, active={active[:12]})"
        )

    def assign_documents(self, corpus: Corpus, ignore_digest: bool = False) -> List[AssignmentResult]:
        """문서마다 디스크립터 순위 목록 생성"""
        if self.model is None:
            raise AssignmentError("모델이 로드되지 않았습니다")
        if len(self.model) == 0:
            logger.warning("[WARN] 빈 모델입니다. 모든 문서에 빈 순위 목록을 반환합니다.")
            return [AssignmentResult(doc.id, ()) for doc in corpus]
        self.check_digest(ignore_digest)

        extractor = self._label_extractor()
        results = []
        for doc in corpus:
            vector = preprocess(doc.text, self.config.preprocess)
            labels_in_text = extractor.extract(doc.text) if extractor else None
            results.append(assign(vector, self.model, self.config.assign, labels_in_text, doc.id))

        empty = sum(1 for r in results if not r.ranked)
        if empty:
            logger.warning(f"[WARN] 후보 디스크립터가 없는 문서 {empty}개")
        logger.info(f"[ASSIGN] {len(results)}개 문서 할당 완료")
        return results

    def evaluate(
        self,
        test: Corpus,
        ranks: Sequence[int] = DEFAULT_RANKS,
        ignore_digest: bool = False,
    ) -> EvalReport:
        if self.model is None:
            raise AssignmentError("모델이 로드되지 않았습니다")
        self.check_digest(ignore_digest)
        extractor = self._label_extractor()
        report = evaluate(
            self.model,
            test,
            self.config.assign,
            ranks,
            preprocess_config=self.config.preprocess,
            label_lookup=extractor.extract if extractor else None,
            workers=self.config.training.workers,
        )
        self.save_results_report(report.to_dict(), "eval_report.json", self.config.paths.report)
        return report

    # ------------------------------------------------------------------
    # 베이스라인
    # ------------------------------------------------------------------

    def extract_baseline(
        self,
        corpus: Corpus,
        options: Optional[BaselineOptions] = None,
        ranks: Sequence[int] = DEFAULT_RANKS,
    ) -> Tuple[Dict[str, List[str]], Optional[EvalReport]]:
        """라벨 일치 추출 결과 (gold가 있으면 같은 형식의 평가 리포트 포함)"""
        if self.thesaurus is None:
            raise ConfigError("extract-baseline에는 시소러스(paths.thesaurus)가 필요합니다")
        extractor = BaselineExtractor(self.thesaurus, self.config.assign.language, options, self.config.preprocess)
        extracted = {doc.id: extractor.extract_ranked(doc.text) for doc in corpus}

        report = None
        if any(doc.gold_descriptors for doc in corpus):
            report = evaluate_rankings(((extracted[doc.id], doc.gold_descriptors) for doc in corpus), ranks)
            self.save_results_report(report.to_dict(), "baseline_report.json")

        self.save_results_report(
            {"descriptors": {doc_id: sorted(ids) for doc_id, ids in extracted.items()}},
            "baseline_extracted.json",
        )
        logger.info(f"[BASELINE] {len(extracted)}개 문서 추출 완료")
        return extracted, report

    # ------------------------------------------------------------------
    # 비교 실험
    # ------------------------------------------------------------------

    def ablate(
        self,
        train: Corpus,
        test: Corpus,
        stoplists: Optional[Mapping[str, FrozenSet[str]]] = None,
        ranks: Sequence[int] = DEFAULT_RANKS,
        progress: bool = False,
    ) -> ExperimentReport:
        """전처리 변형별 학습/평가 + (시소러스가 있으면) 베이스라인 옵션별 평가를 한 리포트로 저장"""
        variants = preprocess_variants(self.config.preprocess, stoplists)
        logger.info(f"[ABLATE] 전처리 변형 {len(variants)}개 실험 시작")
        extractor = self._label_extractor()
        report = ExperimentReport(
            preprocessing=run_preprocessing_ablation(
                train,
                test,
                variants,
                self.config.training,
                self.config.assign,
                ranks,
                progress=progress,
                label_lookup=extractor.extract if extractor else None,
            )
        )
        if self.thesaurus is not None:
            report.baseline = run_baseline_variants(
                test, self.thesaurus, self.config.assign.language, self.config.preprocess, ranks=ranks
            )
        else:
            logger.info("[ABLATE] 시소러스가 없어 베이스라인 비교는 건너뜁니다")

        self.save_results_report({"run_config": self.config.to_dict(), **report.to_dict()}, "ablation_report.json")
        return report

    def show_associates(self, descriptor_id: str, top_n: Optional[int] = None) -> str:
        if self.model is None:
            raise AssignmentError("모델이 로드되지 않았습니다")
        return format_associates(self.model, descriptor_id, self.labels().get(descriptor_id), top_n)

    # ------------------------------------------------------------------
    # 리포트
    # ------------------------------------------------------------------

    def save_results_report(
        self,
        payload: dict,
        filename: str,
        path: Optional[Union[str, Path]] = None,
    ) -> Path:
        """결과 리포트 저장 (타임스탬프 없음: 같은 입력이면 같은 파일)"""
        report_path = write_json(payload, path or self.output_dir / filename)
        logger.info(f"[REPORT] 리포트 저장됨: {report_path}")
        return report_path
