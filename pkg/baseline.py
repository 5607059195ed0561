"""
키워드 추출 베이스라인
디스크립터 라벨(선택: 비디스크립터)이 본문에 그대로 등장하면 그 디스크립터를 부여한다.
라벨과 본문은 같은 토큰 파이프라인을 거친 뒤 연속 토큰 시퀀스로 비교한다.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from errors import UnknownLanguageError
from preprocess import PreprocessConfig, lemmatize, remove_stopwords, tokenize
from thesaurus import Thesaurus, surface_forms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BaselineOptions:
    use_lemmas: bool = False
    use_stopwords: bool = False
    use_non_descriptors: bool = False


class BaselineExtractor:
    """시소러스 표층형을 한 번만 전처리해 두고 여러 문서에 재사용"""

    def __init__(
        self,
        thesaurus: Thesaurus,
        lang: str,
        options: Optional[BaselineOptions] = None,
        preprocess_config: Optional[PreprocessConfig] = None,
    ):
        if lang not in thesaurus.languages:
            raise UnknownLanguageError(lang)
        self.thesaurus = thesaurus
        self.lang = lang
        self.options = options or BaselineOptions()
        self.preprocess_config = preprocess_config or PreprocessConfig()

        # 첫 토큰 → [(토큰 시퀀스, 디스크립터 ID)]
        self._index: Dict[str, List[Tuple[Tuple[str, ...], str]]] = {}
        for descriptor_id in sorted(thesaurus.descriptors):
            forms = surface_forms(thesaurus, descriptor_id, lang, self.options.use_non_descriptors)
            for form in forms:
                sequence = tuple(self.process(form))
                if sequence:
                    self._index.setdefault(sequence[0], []).append((sequence, descriptor_id))

    def process(self, text: str) -> List[str]:
        """옵션에 따른 토큰 파이프라인 (다단어 결합은 적용하지 않음)"""
        tokens = tokenize(text)
        if self.options.use_lemmas:
            tokens = lemmatize(tokens, self.preprocess_config.lemma_dictionary)
        if self.options.use_stopwords:
            tokens = remove_stopwords(tokens, self.preprocess_config.stopwords)
        return tokens

    def extract_ranked(self, text: str) -> List[str]:
        """첫 등장 위치 순으로 정렬한 디스크립터 목록 (같은 위치는 ID 순)"""
        tokens = self.process(text)
        first_seen: Dict[str, int] = {}
        for position, token in enumerate(tokens):
            for sequence, descriptor_id in self._index.get(token, ()):
                if descriptor_id in first_seen:
                    continue
                if tuple(tokens[position:position + len(sequence)]) == sequence:
                    first_seen[descriptor_id] = position
        return sorted(first_seen, key=lambda d: (first_seen[d], d))

    def extract(self, text: str) -> Set[str]:
        return set(self.extract_ranked(text))


def extract_descriptors(
    text: str,
    thesaurus: Thesaurus,
    lang: str,
    options: Optional[BaselineOptions] = None,
    preprocess_config: Optional[PreprocessConfig] = None,
) -> Set[str]:
    """라벨이 본문에 연속 토큰으로 등장하는 디스크립터 집합"""
    return BaselineExtractor(thesaurus, lang, options, preprocess_config).extract(text)
