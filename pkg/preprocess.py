"""
텍스트 전처리 파이프라인
tokenize → lemmatize (LEM) → mark_multiwords (MW) → remove_stopwords (SW) → LemmaVector

모든 함수는 순수 함수이며 설정 객체는 불변이다.
"""

import hashlib
import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from errors import ConfigError

logger = logging.getLogger(__name__)

MULTIWORD_JOINER = "_"
STOPWORD_KINDS = ("standard", "corpus_tuned")

# 문자/숫자 연속 구간만 토큰으로 취급 ('_' 포함 구두점과 공백에서 분리)
_TOKEN_RE = re.compile(r"[^\W_]+")


@dataclass(frozen=True)
class LemmaVector:
    """전처리 후의 희소 빈도 벡터 (lemma → count)"""

    counts: Mapping[str, int] = field(default_factory=dict)
    length: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "length", sum(self.counts.values()))

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "LemmaVector":
        return cls(dict(Counter(tokens)))

    def __bool__(self) -> bool:
        return self.length > 0


@dataclass(frozen=True)
class PreprocessConfig:
    """LEM/SW/MW 플래그와 각 단계의 리소스"""

    use_lemmas: bool = False
    lemma_dictionary: Mapping[str, str] = field(default_factory=dict)
    use_stopwords: bool = False
    stopwords: FrozenSet[str] = frozenset()
    stopword_kind: str = "corpus_tuned"
    use_multiwords: bool = False
    multiwords: Tuple[Tuple[str, ...], ...] = ()

    def __post_init__(self):
        if self.stopword_kind not in STOPWORD_KINDS:
            raise ConfigError(f"stopword_kind는 {STOPWORD_KINDS} 중 하나여야 합니다: {self.stopword_kind}")
        for entry in self.stopwords:
            if not entry or len(entry.split()) != 1:
                raise ConfigError(f"불용어는 단일 토큰이어야 합니다: {entry!r}")
        for sequence in self.multiwords:
            if len(sequence) < 2:
                raise ConfigError(f"다단어 표현은 2개 이상의 lemma로 구성되어야 합니다: {sequence!r}")
        object.__setattr__(self, "stopwords", frozenset(self.stopwords))
        object.__setattr__(self, "multiwords", tuple(tuple(s) for s in self.multiwords))

    @cached_property
    def multiword_set(self) -> FrozenSet[Tuple[str, ...]]:
        return normalize_lexicon(self.multiwords)

    def to_dict(self) -> dict:
        return {
            "use_lemmas": self.use_lemmas,
            "lemma_dictionary": dict(sorted(self.lemma_dictionary.items())),
            "use_stopwords": self.use_stopwords,
            "stopwords": sorted(self.stopwords),
            "stopword_kind": self.stopword_kind,
            "use_multiwords": self.use_multiwords,
            "multiwords": [" ".join(s) for s in self.multiwords],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PreprocessConfig":
        return cls(
            use_lemmas=bool(data.get("use_lemmas", False)),
            lemma_dictionary=dict(data.get("lemma_dictionary", {})),
            use_stopwords=bool(data.get("use_stopwords", False)),
            stopwords=frozenset(data.get("stopwords", ())),
            stopword_kind=data.get("stopword_kind", "corpus_tuned"),
            use_multiwords=bool(data.get("use_multiwords", False)),
            multiwords=tuple(tuple(line.split()) for line in data.get("multiwords", ())),
        )


def tokenize(text: str) -> List[str]:
    """소문자화 후 공백/구두점 기준 분리 (숫자 연속 구간 유지)"""
    return _TOKEN_RE.findall(text.lower())


def lemmatize(tokens: Sequence[str], dictionary: Mapping[str, str]) -> List[str]:
    """사전 조회 방식 lemma 변환 (없는 토큰은 그대로)"""
    return [dictionary.get(token, token) for token in tokens]


def normalize_lexicon(lexicon: Iterable[Union[str, Sequence[str]]]) -> FrozenSet[Tuple[str, ...]]:
    """"fishery resource" 같은 문자열 항목과 lemma 시퀀스 항목을 모두 튜플로"""
    return frozenset(tuple(s.split()) if isinstance(s, str) else tuple(s) for s in lexicon)


def mark_multiwords(tokens: Sequence[str], lexicon: Iterable[Union[str, Sequence[str]]]) -> List[str]:
    """왼쪽부터 최장 일치로 다단어 표현을 '_'로 결합"""
    entries = normalize_lexicon(lexicon)
    if not entries:
        return list(tokens)
    longest = max(len(s) for s in entries)

    marked = []
    i = 0
    while i < len(tokens):
        for size in range(min(longest, len(tokens) - i), 1, -1):
            candidate = tuple(tokens[i:i + size])
            if candidate in entries:
                marked.append(MULTIWORD_JOINER.join(candidate))
                i += size
                break
        else:
            marked.append(tokens[i])
            i += 1
    return marked


def remove_stopwords(tokens: Sequence[str], stoplist: Iterable[str]) -> List[str]:
    """불용어 제거 (다단어 토큰은 구성어가 불용어여도 유지)"""
    stoplist = stoplist if isinstance(stoplist, (set, frozenset)) else set(stoplist)
    return [t for t in tokens if MULTIWORD_JOINER in t or t not in stoplist]


def process_tokens(text: str, config: PreprocessConfig) -> List[str]:
    """파이프라인을 적용한 토큰 시퀀스 (순서 유지)"""
    tokens = tokenize(text)
    if config.use_lemmas:
        tokens = lemmatize(tokens, config.lemma_dictionary)
    if config.use_multiwords:
        tokens = mark_multiwords(tokens, config.multiword_set)
    if config.use_stopwords:
        tokens = remove_stopwords(tokens, config.stopwords)
    return tokens


def preprocess(text: str, config: Optional[PreprocessConfig] = None) -> LemmaVector:
    """원문 → LemmaVector"""
    return LemmaVector.from_tokens(process_tokens(text, config or PreprocessConfig()))


def preprocess_digest(config: PreprocessConfig) -> str:
    """전처리 설정 + 리소스 내용의 SHA-256 (모델/설정 불일치 검출용)"""
    data = config.to_dict()
    data["multiwords"] = sorted(data["multiwords"])
    payload = json.dumps(data, ensure_ascii=False, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# 리소스 파일 로더
# ---------------------------------------------------------------------------

def _read_lines(path: Union[str, Path]) -> List[Tuple[int, str]]:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"리소스 파일을 읽을 수 없습니다: {path} ({e})") from e
    return list(enumerate(raw.splitlines(), 1))


def load_stopwords(path: Union[str, Path]) -> FrozenSet[str]:
    """한 줄에 토큰 하나, '#' 주석"""
    words = set()
    for lineno, line in _read_lines(path):
        line = line.split("#", 1)[0].strip().lower()
        if not line:
            continue
        if len(line.split()) != 1:
            raise ConfigError(f"불용어 파일 {path}:{lineno} - 단일 토큰이 아닙니다: {line!r}")
        words.add(line)
    logger.debug(f"[PREPROCESS] 불용어 {len(words)}개 로드: {path}")
    return frozenset(words)


def load_multiwords(path: Union[str, Path]) -> Tuple[Tuple[str, ...], ...]:
    """한 줄에 공백으로 구분된 lemma 시퀀스 하나"""
    entries = []
    for lineno, line in _read_lines(path):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        sequence = tuple(tokenize(line))
        if len(sequence) < 2:
            raise ConfigError(f"다단어 파일 {path}:{lineno} - 2개 이상의 lemma가 필요합니다: {line!r}")
        entries.append(sequence)
    logger.debug(f"[PREPROCESS] 다단어 표현 {len(entries)}개 로드: {path}")
    return tuple(entries)


def load_lemma_dictionary(path: Union[str, Path]) -> Dict[str, str]:
    """탭 구분 'token<TAB>lemma'"""
    dictionary = {}
    for lineno, line in _read_lines(path):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ConfigError(f"lemma 사전 {path}:{lineno} - 'token<TAB>lemma' 형식이 아닙니다")
        dictionary[parts[0].strip().lower()] = parts[1].strip().lower()
    logger.debug(f"[PREPROCESS] lemma 사전 {len(dictionary)}개 항목 로드: {path}")
    return dictionary
