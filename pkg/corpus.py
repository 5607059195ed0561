"""
코퍼스 로더 / 분할 / 참조 코퍼스 통계
- 줄 단위 JSON 레코드 (id, lang, type, text, descriptors)
- 문서 유형(doc_type)별 층화 train/test 분할
"""

import json
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

import numpy as np

from errors import CorpusError
from preprocess import LemmaVector, PreprocessConfig, preprocess

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Document:
    """수작업 색인된 문서 하나"""

    id: str
    text: str
    language: str = ""
    doc_type: str = ""
    gold_descriptors: FrozenSet[str] = frozenset()

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "lang": self.language,
            "type": self.doc_type,
            "text": self.text,
            "descriptors": sorted(self.gold_descriptors),
        }


@dataclass(frozen=True)
class Corpus:
    documents: Tuple[Document, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        seen = set()
        for doc in self.documents:
            if doc.id in seen:
                raise CorpusError(f"중복된 문서 ID: {doc.id}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def __add__(self, other: "Corpus") -> "Corpus":
        return Corpus(self.documents + other.documents)


@dataclass(frozen=True)
class CorpusStats:
    """참조 코퍼스 통계 (log-likelihood 계산과 Okapi 길이 정규화에 사용)"""

    doc_count: int
    total_lemma_count: int
    lemma_counts: Mapping[str, int] = field(default_factory=dict)
    avg_doc_length: float = 0.0

    def count(self, lemma: str) -> int:
        return self.lemma_counts.get(lemma, 0)

    def to_dict(self) -> dict:
        return {
            "doc_count": self.doc_count,
            "total_lemma_count": self.total_lemma_count,
            "avg_doc_length": self.avg_doc_length,
            "lemma_counts": dict(sorted(self.lemma_counts.items())),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CorpusStats":
        return cls(
            doc_count=int(data["doc_count"]),
            total_lemma_count=int(data["total_lemma_count"]),
            lemma_counts={k: int(v) for k, v in data["lemma_counts"].items()},
            avg_doc_length=float(data["avg_doc_length"]),
        )


# ---------------------------------------------------------------------------
# 입출력
# ---------------------------------------------------------------------------

def _parse_record(record, lineno: int) -> Document:
    if not isinstance(record, dict):
        raise CorpusError("레코드는 JSON 객체여야 합니다", lineno)
    for key in ("id", "text"):
        if not isinstance(record.get(key), str):
            raise CorpusError(f"필수 필드 '{key}'가 없거나 문자열이 아닙니다", lineno)
    if not record["text"].strip():
        raise CorpusError(f"빈 텍스트: {record['id']}", lineno)

    descriptors = record.get("descriptors", [])
    if not isinstance(descriptors, list) or not all(isinstance(d, str) for d in descriptors):
        raise CorpusError("'descriptors'는 문자열 배열이어야 합니다", lineno)

    return Document(
        id=record["id"],
        text=record["text"],
        language=str(record.get("lang", "")),
        doc_type=str(record.get("type", "")),
        gold_descriptors=frozenset(descriptors),
    )


def load_corpus(path: Union[str, Path]) -> Corpus:
    """줄 단위 JSON 코퍼스 로드 (빈 줄 무시, 순서 유지)"""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise CorpusError(f"코퍼스 파일을 읽을 수 없습니다: {path} ({e})") from e

    documents = []
    seen: Dict[str, int] = {}
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusError(f"JSON 파싱 실패: {e.msg}", lineno) from e
        doc = _parse_record(record, lineno)
        if doc.id in seen:
            raise CorpusError(f"중복된 문서 ID: {doc.id} (처음 등장: line {seen[doc.id]})", lineno)
        seen[doc.id] = lineno
        documents.append(doc)

    logger.info(f"[CORPUS] {len(documents)}개 문서 로드 완료: {path}")
    return Corpus(tuple(documents))


def save_corpus(corpus: Corpus, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for doc in corpus:
            f.write(json.dumps(doc.to_dict(), ensure_ascii=False) + "\n")
    return path


def filter_language(corpus: Corpus, lang: str) -> Corpus:
    """lang 문서만 남긴 코퍼스 (언어별로 따로 학습)"""
    kept = Corpus(tuple(doc for doc in corpus if doc.language == lang))
    logger.info(f"[CORPUS] '{lang}' 문서 {len(kept)}/{len(corpus)}개 선택")
    return kept


# ---------------------------------------------------------------------------
# 층화 분할
# ---------------------------------------------------------------------------

def _test_count(stratum_size: int, test_fraction: float) -> int:
    exact = Decimal(stratum_size) * Decimal(repr(test_fraction))
    return int(exact.quantize(Decimal(1), rounding=ROUND_HALF_UP))


def split_stratified(corpus: Corpus, test_fraction: float, seed: int = 0) -> Tuple[Corpus, Corpus]:
    """문서 유형별로 round-half-up(크기 × 비율)개를 test로 추출

    유형은 이름순으로 처리하고 하나의 시드 난수 생성기를 공유하므로
    같은 (corpus, fraction, seed)는 항상 같은 분할을 만든다.
    """
    if not 0.0 <= test_fraction <= 1.0:
        raise CorpusError(f"test_fraction은 [0, 1] 범위여야 합니다: {test_fraction}")

    strata: Dict[str, List[int]] = {}
    for index, doc in enumerate(corpus.documents):
        strata.setdefault(doc.doc_type, []).append(index)

    rng = np.random.default_rng(seed)
    test_indices = set()
    for doc_type in sorted(strata):
        members = strata[doc_type]
        n_test = _test_count(len(members), test_fraction)
        order = rng.permutation(len(members))
        test_indices.update(members[i] for i in order[:n_test])
        logger.debug(f"[SPLIT] type={doc_type!r}: {len(members)}개 중 test {n_test}개")

    train = tuple(d for i, d in enumerate(corpus.documents) if i not in test_indices)
    test = tuple(d for i, d in enumerate(corpus.documents) if i in test_indices)
    logger.info(f"[SPLIT] train {len(train)}개 / test {len(test)}개 (fraction={test_fraction}, seed={seed})")
    return Corpus(train), Corpus(test)


# ---------------------------------------------------------------------------
# 참조 코퍼스 통계
# ---------------------------------------------------------------------------

def stats_from_vectors(vectors: Iterable[LemmaVector]) -> CorpusStats:
    """LemmaVector 모음에서 통계 계산 (순서와 무관)"""
    counts: Counter = Counter()
    doc_count = 0
    for vector in vectors:
        counts.update(vector.counts)
        doc_count += 1
    if doc_count == 0:
        raise CorpusError("빈 코퍼스의 통계는 계산할 수 없습니다")
    total = sum(counts.values())
    return CorpusStats(
        doc_count=doc_count,
        total_lemma_count=total,
        lemma_counts=dict(sorted(counts.items())),
        avg_doc_length=total / doc_count,
    )


def preprocess_corpus(
    corpus: Corpus,
    config: Optional[PreprocessConfig] = None,
    workers: int = 1,
) -> Dict[str, LemmaVector]:
    """문서 ID → LemmaVector (workers > 1이면 스레드 풀 사용)"""
    config = config or PreprocessConfig()
    texts = [doc.text for doc in corpus]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            vectors = list(executor.map(lambda t: preprocess(t, config), texts))
    else:
        vectors = [preprocess(t, config) for t in texts]
    return {doc.id: vector for doc, vector in zip(corpus, vectors)}


def corpus_stats(corpus: Corpus, config: Optional[PreprocessConfig] = None, workers: int = 1) -> CorpusStats:
    if len(corpus) == 0:
        raise CorpusError("빈 코퍼스의 통계는 계산할 수 없습니다")
    return stats_from_vectors(preprocess_corpus(corpus, config, workers).values())


def merge_stats(a: CorpusStats, b: CorpusStats) -> CorpusStats:
    """두 코퍼스 통계 병합 (연결된 코퍼스의 통계와 동일)"""
    counts = Counter(a.lemma_counts)
    counts.update(b.lemma_counts)
    doc_count = a.doc_count + b.doc_count
    total = a.total_lemma_count + b.total_lemma_count
    return CorpusStats(
        doc_count=doc_count,
        total_lemma_count=total,
        lemma_counts=dict(sorted(counts.items())),
        avg_doc_length=total / doc_count if doc_count else 0.0,
    )
