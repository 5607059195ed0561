"""
개념 시소러스 로더
- 디스크립터 라벨(언어별), 비디스크립터, BT/NT/RT 계층 링크
- 로드 후에는 불변 객체로 취급 (동시 읽기 안전)
"""

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Tuple, Union

from errors import ThesaurusError, UnknownDescriptorError, UnknownLanguageError

logger = logging.getLogger(__name__)

_WS_RE = re.compile(r"\s*")


@dataclass(frozen=True)
class Descriptor:
    """통제 어휘의 디스크립터 하나"""

    id: str
    labels: Mapping[str, str] = field(default_factory=dict)
    non_descriptors: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)
    broader: Tuple[str, ...] = ()
    narrower: Tuple[str, ...] = ()
    related: Tuple[str, ...] = ()

    def label(self, lang: str) -> str:
        return self.labels[lang]


@dataclass(frozen=True)
class Thesaurus:
    """디스크립터 사전 + 지원 언어 집합"""

    descriptors: Mapping[str, Descriptor]
    languages: frozenset

    def __len__(self) -> int:
        return len(self.descriptors)

    def __contains__(self, descriptor_id: str) -> bool:
        return descriptor_id in self.descriptors

    def get(self, descriptor_id: str) -> Descriptor:
        try:
            return self.descriptors[descriptor_id]
        except KeyError:
            raise UnknownDescriptorError(descriptor_id) from None

    def label(self, descriptor_id: str, lang: str) -> str:
        if lang not in self.languages:
            raise UnknownLanguageError(lang)
        return self.get(descriptor_id).labels[lang]


def _skip_ws(raw: str, index: int) -> int:
    return _WS_RE.match(raw, index).end()


def _descriptor_lines(raw: str) -> List[int]:
    """"descriptors" 배열 원소(객체)가 시작하는 줄 번호 목록. 유효한 JSON 텍스트만 받는다."""
    decoder = json.JSONDecoder()
    index = _skip_ws(raw, 0) + 1  # '{'
    while True:
        index = _skip_ws(raw, index)
        if raw[index] == "}":
            return []
        key, index = decoder.raw_decode(raw, index)
        index = _skip_ws(raw, _skip_ws(raw, index) + 1)  # ':'
        if key == "descriptors" and raw[index] == "[":
            break
        _, index = decoder.raw_decode(raw, index)
        index = _skip_ws(raw, index)
        if raw[index] == ",":
            index += 1

    lines = []
    index += 1  # '['
    while True:
        index = _skip_ws(raw, index)
        if raw[index] == "]":
            return lines
        lines.append(raw.count("\n", 0, index) + 1)
        _, index = decoder.raw_decode(raw, index)
        index = _skip_ws(raw, index)
        if raw[index] == ",":
            index += 1


def _as_str_list(value, what: str, descriptor_id: str, line: int) -> Tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ThesaurusError(f"'{what}'는 문자열 배열이어야 합니다", descriptor_id, line)
    return tuple(value)


def parse_thesaurus(raw: str) -> Thesaurus:
    """JSON 텍스트에서 시소러스 생성 (전부 성공하거나 예외)"""
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ThesaurusError(f"JSON 파싱 실패: {e.msg}", line=e.lineno) from e

    if not isinstance(data, dict):
        raise ThesaurusError("최상위 값은 객체여야 합니다", line=1)
    languages = data.get("languages")
    entries = data.get("descriptors")
    if not isinstance(languages, list) or not all(isinstance(x, str) for x in languages):
        raise ThesaurusError("'languages'는 문자열 배열이어야 합니다", line=1)
    if not isinstance(entries, list):
        raise ThesaurusError("'descriptors'는 배열이어야 합니다", line=1)

    lines = _descriptor_lines(raw)
    language_set = frozenset(languages)
    descriptors: Dict[str, Descriptor] = {}
    line_of: Dict[str, int] = {}

    for index, entry in enumerate(entries):
        line = lines[index] if index < len(lines) else None
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise ThesaurusError(f"{index}번째 디스크립터에 문자열 'id'가 없습니다", line=line)
        descriptor_id = entry["id"]
        if descriptor_id in descriptors:
            raise ThesaurusError(f"중복된 디스크립터 ID: {descriptor_id}", descriptor_id, line)

        labels = entry.get("labels", {})
        if not isinstance(labels, dict) or not all(isinstance(v, str) for v in labels.values()):
            raise ThesaurusError("'labels'는 언어→문자열 객체여야 합니다", descriptor_id, line)
        for lang in sorted(language_set):
            if not labels.get(lang):
                raise ThesaurusError(f"'{lang}' 라벨이 없습니다", descriptor_id, line)

        raw_nd = entry.get("non_descriptors", {})
        if not isinstance(raw_nd, dict):
            raise ThesaurusError("'non_descriptors'는 객체여야 합니다", descriptor_id, line)
        non_descriptors = {
            lang: _as_str_list(phrases, "non_descriptors", descriptor_id, line)
            for lang, phrases in raw_nd.items()
        }

        descriptors[descriptor_id] = Descriptor(
            id=descriptor_id,
            labels=dict(labels),
            non_descriptors=non_descriptors,
            broader=_as_str_list(entry.get("bt", []), "bt", descriptor_id, line),
            narrower=_as_str_list(entry.get("nt", []), "nt", descriptor_id, line),
            related=_as_str_list(entry.get("rt", []), "rt", descriptor_id, line),
        )
        line_of[descriptor_id] = line

    # 링크 검증
    for descriptor in descriptors.values():
        for link in descriptor.broader + descriptor.narrower + descriptor.related:
            if link not in descriptors:
                raise ThesaurusError(
                    f"존재하지 않는 디스크립터를 참조합니다: {link}",
                    descriptor.id, line_of[descriptor.id],
                )

    return Thesaurus(descriptors=_close_hierarchy(descriptors), languages=language_set)


def _close_hierarchy(descriptors: Dict[str, Descriptor]) -> Dict[str, Descriptor]:
    """BT/NT를 서로의 역관계로 보완 (한쪽에만 적힌 링크 허용)"""
    broader = {d: list(desc.broader) for d, desc in descriptors.items()}
    narrower = {d: list(desc.narrower) for d, desc in descriptors.items()}
    for d, desc in descriptors.items():
        for parent in desc.broader:
            if d not in narrower[parent]:
                narrower[parent].append(d)
        for child in desc.narrower:
            if d not in broader[child]:
                broader[child].append(d)

    closed = {}
    for d, desc in descriptors.items():
        closed[d] = Descriptor(
            id=desc.id,
            labels=desc.labels,
            non_descriptors=desc.non_descriptors,
            broader=tuple(broader[d]),
            narrower=tuple(narrower[d]),
            related=desc.related,
        )
    return closed


def load_thesaurus(path: Union[str, Path]) -> Thesaurus:
    """시소러스 파일 로드"""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ThesaurusError(f"시소러스 파일을 읽을 수 없습니다: {path} ({e})") from e

    thesaurus = parse_thesaurus(raw)
    logger.info(f"[THESAURUS] {len(thesaurus)}개 디스크립터 로드 완료: {path}")
    return thesaurus


def thesaurus_to_dict(thesaurus: Thesaurus) -> dict:
    """파일 형식과 같은 구조의 dict로 변환"""
    entries = []
    for descriptor in thesaurus.descriptors.values():
        entry = {"id": descriptor.id, "labels": dict(descriptor.labels)}
        if descriptor.non_descriptors:
            entry["non_descriptors"] = {k: list(v) for k, v in descriptor.non_descriptors.items()}
        if descriptor.broader:
            entry["bt"] = list(descriptor.broader)
        if descriptor.narrower:
            entry["nt"] = list(descriptor.narrower)
        if descriptor.related:
            entry["rt"] = list(descriptor.related)
        entries.append(entry)
    return {"languages": sorted(thesaurus.languages), "descriptors": entries}


def save_thesaurus(thesaurus: Thesaurus, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(thesaurus_to_dict(thesaurus), f, ensure_ascii=False, indent=2)
    return path


def surface_forms(
    thesaurus: Thesaurus,
    descriptor_id: str,
    lang: str,
    include_non_descriptors: bool = True,
) -> List[str]:
    """디스크립터의 표층형 목록: 라벨 + (선택) 비디스크립터

    대소문자는 원문 그대로 반환하며, 비교 시 소문자화는 호출 측 책임.
    """
    if lang not in thesaurus.languages:
        raise UnknownLanguageError(lang)
    descriptor = thesaurus.get(descriptor_id)
    forms = [descriptor.labels[lang]]
    if include_non_descriptors:
        forms.extend(descriptor.non_descriptors.get(lang, ()))
    return forms
