"""
모델 영속화 + 실행 설정(RunConfig)
- 모델/설정/리포트는 모두 UTF-8 JSON (indent=2)
- 가중치는 repr 기반 최단 왕복 십진 표현으로 저장
"""

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from assigner import AssignConfig
from corpus import CorpusStats
from errors import ConfigError, IndexerError, ModelFormatError, ModelVersionError
from preprocess import PreprocessConfig, load_lemma_dictionary, load_multiwords, load_stopwords
from trainer import FORMAT_VERSION, AssociateEntry, AssociateList, Model, TrainingConfig

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 모델 저장/로드
# ---------------------------------------------------------------------------

def model_to_dict(model: Model) -> dict:
    return {
        "format_version": model.format_version,
        "preprocess_digest": model.preprocess_digest,
        "training_config": model.training_config.to_dict(),
        "reference_stats": model.reference_stats.to_dict(),
        "associate_lists": {
            descriptor_id: [
                {
                    "lemma": e.lemma,
                    "raw_frequency": e.raw_frequency,
                    "text_count": e.supporting_text_count,
                    "weight": e.weight,
                }
                for e in model.associate_lists[descriptor_id].entries
            ]
            for descriptor_id in sorted(model.associate_lists)
        },
    }


def model_from_dict(data: Mapping) -> Model:
    if not isinstance(data, dict):
        raise ModelFormatError("모델 파일의 최상위 값은 객체여야 합니다")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelVersionError(version, FORMAT_VERSION)
    try:
        lists = {
            descriptor_id: AssociateList(
                descriptor_id,
                tuple(
                    AssociateEntry(
                        lemma=e["lemma"],
                        weight=float(e["weight"]),
                        supporting_text_count=int(e["text_count"]),
                        raw_frequency=int(e["raw_frequency"]),
                    )
                    for e in entries
                ),
            )
            for descriptor_id, entries in data["associate_lists"].items()
        }
        return Model(
            associate_lists=lists,
            training_config=TrainingConfig.from_dict(data["training_config"]),
            reference_stats=CorpusStats.from_dict(data["reference_stats"]),
            format_version=version,
            preprocess_digest=data.get("preprocess_digest", ""),
        )
    except (KeyError, TypeError, AttributeError) as e:
        raise ModelFormatError(f"모델 파일 구조가 올바르지 않습니다: {e!r}") from e


def save_model(model: Model, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model_to_dict(model), f, ensure_ascii=False, indent=2)
        f.write("\n")
    logger.info(f"[MODEL] 모델 저장됨: {path} ({len(model)}개 디스크립터)")
    return path


def load_model(path: Union[str, Path]) -> Model:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFormatError(f"모델 파일을 읽을 수 없습니다: {path} ({e})") from e
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"모델 파일이 잘렸거나 손상되었습니다: {path} (line {e.lineno})") from e
    model = model_from_dict(data)
    logger.info(f"[MODEL] 모델 로드됨: {path} ({len(model)}개 디스크립터)")
    return model


def write_json(payload: Any, path: Union[str, Path]) -> Path:
    """리포트/요약 JSON 저장"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False, indent=2)
        f.write("\n")
    return path


# ---------------------------------------------------------------------------
# 실행 설정
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathsConfig:
    thesaurus: Optional[str] = None
    corpus: Optional[str] = None
    model: Optional[str] = None
    report: Optional[str] = None
    output_dir: str = "./indexer_output"


@dataclass(frozen=True)
class SplitConfig:
    test_fraction: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.test_fraction <= 1.0:
            raise ConfigError(f"test_fraction은 [0, 1] 범위여야 합니다: {self.test_fraction}")


@dataclass(frozen=True)
class CorpusConfig:
    # 지정하면 이 언어의 문서만 사용 (언어별 모델)
    language: Optional[str] = None


@dataclass(frozen=True)
class RunConfig:
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    training: TrainingConfig = field(default_factory=TrainingConfig)
    assign: AssignConfig = field(default_factory=AssignConfig)
    paths: PathsConfig = field(default_factory=PathsConfig)
    split: SplitConfig = field(default_factory=SplitConfig)
    corpus: CorpusConfig = field(default_factory=CorpusConfig)

    def to_dict(self) -> dict:
        training = self.training.to_dict()
        training.pop("preprocess")
        return {
            "preprocess": self.preprocess.to_dict(),
            "training": training,
            "assign": self.assign.to_dict(),
            "paths": dict(vars(self.paths)),
            "split": dict(vars(self.split)),
            "corpus": dict(vars(self.corpus)),
        }


def _resolve(base: Path, value: Optional[str]) -> Optional[str]:
    if value is None:
        return None
    path = Path(value)
    return str(path if path.is_absolute() else base / path)


def _preprocess_from_section(section: Mapping, base: Path) -> PreprocessConfig:
    """리소스 경로를 읽어 PreprocessConfig 생성"""
    known = {"use_lemmas", "lemma_dictionary", "use_stopwords", "stopwords",
             "stopword_kind", "use_multiwords", "multiwords"}
    unknown = set(section) - known
    if unknown:
        raise ConfigError(f"preprocess 섹션에 알 수 없는 키: {sorted(unknown)}")

    def resource(key, loader, empty):
        value = section.get(key)
        if value is None:
            return empty
        path = Path(_resolve(base, value))
        if not path.exists():
            raise ConfigError(f"preprocess.{key} 파일이 없습니다: {path}")
        return loader(path)

    return PreprocessConfig(
        use_lemmas=bool(section.get("use_lemmas", False)),
        lemma_dictionary=resource("lemma_dictionary", load_lemma_dictionary, {}),
        use_stopwords=bool(section.get("use_stopwords", False)),
        stopwords=resource("stopwords", load_stopwords, frozenset()),
        stopword_kind=section.get("stopword_kind", "corpus_tuned"),
        use_multiwords=bool(section.get("use_multiwords", False)),
        multiwords=resource("multiwords", load_multiwords, ()),
    )


def build_run_config(
    data: Optional[Mapping] = None,
    base_dir: Union[str, Path] = ".",
    overrides: Optional[Mapping[str, Mapping[str, Any]]] = None,
) -> RunConfig:
    """설정 dict + 섹션별 덮어쓰기 → 검증된 RunConfig"""
    data = dict(data or {})
    overrides = overrides or {}
    base = Path(base_dir)

    unknown = set(data) - {"preprocess", "training", "assign", "paths", "split", "corpus"}
    if unknown:
        raise ConfigError(f"알 수 없는 설정 섹션: {sorted(unknown)}")

    def section(name: str) -> Dict[str, Any]:
        values = dict(data.get(name) or {})
        values.update({k: v for k, v in overrides.get(name, {}).items() if v is not None})
        return values

    try:
        preprocess_config = _preprocess_from_section(section("preprocess"), base)
        training = TrainingConfig.from_dict({**section("training"), "preprocess": {}})
        training = replace(training, preprocess=preprocess_config)
        assign_config = AssignConfig.from_dict(section("assign"))
        # 파일 안의 경로는 설정 파일 기준, 덮어쓰기 경로는 그대로
        paths_values = {k: _resolve(base, v) for k, v in dict(data.get("paths") or {}).items()}
        paths_values.update({k: v for k, v in overrides.get("paths", {}).items() if v is not None})
        paths = PathsConfig(**paths_values)
        split = SplitConfig(**section("split"))
        corpus = CorpusConfig(**section("corpus"))
    except ConfigError:
        raise
    except IndexerError as e:
        raise ConfigError(str(e)) from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f"설정 값 오류: {e}") from e

    return RunConfig(preprocess_config, training, assign_config, paths, split, corpus)


def load_run_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Mapping[str, Any]]] = None,
) -> RunConfig:
    """JSON 설정 파일 로드 (경로가 없으면 기본값 + 덮어쓰기만 적용)"""
    if path is None:
        return build_run_config({}, Path.cwd(), overrides)
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"설정 파일이 없습니다: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"설정 파일 JSON 파싱 실패: {path} (line {e.lineno}): {e.msg}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"설정 파일의 최상위 값은 객체여야 합니다: {path}")
    logger.debug(f"[CONFIG] 설정 로드: {path}")
    return build_run_config(data, path.parent, overrides)
