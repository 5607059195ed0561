"""
합성 코퍼스 생성기
디스크립터마다 서로 겹치지 않는 내용 어휘 + 모든 문서가 공유하는 잡음 어휘로 문서를 만든다.
시소러스 라벨("concept 03")은 본문에 절대 등장하지 않으므로 라벨 일치 추출은 아무것도 찾지 못한다.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np

from corpus import Corpus, Document, save_corpus
from thesaurus import Descriptor, Thesaurus, save_thesaurus

logger = logging.getLogger(__name__)

DOC_TYPES = ("legislation", "report")


@dataclass(frozen=True)
class SyntheticCorpus:
    thesaurus: Thesaurus
    corpus: Corpus
    vocabularies: Mapping[str, Tuple[str, ...]]


def descriptor_id(index: int) -> str:
    return f"D{index:03d}"


def _thesaurus_and_vocabularies(n_descriptors: int, vocab_size: int):
    vocabularies: Dict[str, Tuple[str, ...]] = {}
    descriptors: Dict[str, Descriptor] = {}
    for i in range(n_descriptors):
        d = descriptor_id(i)
        vocabularies[d] = tuple(f"d{i:02d}w{j:02d}" for j in range(vocab_size))
        descriptors[d] = Descriptor(
            id=d,
            labels={"en": f"concept {i:02d}"},
            non_descriptors={"en": (f"subject {i:02d}",)},
        )
    return Thesaurus(descriptors=descriptors, languages=frozenset({"en"})), vocabularies


def _text(rng: np.random.Generator, pool: Sequence[str], noise: Sequence[str], n_tokens: int, own_share: float) -> str:
    """pool(gold 디스크립터 어휘 합집합)에서 own_share 비율, 나머지는 잡음 어휘"""
    own = rng.random(n_tokens) < own_share
    own_idx = rng.integers(0, len(pool), n_tokens)
    noise_idx = rng.integers(0, len(noise), n_tokens)
    return " ".join(pool[a] if o else noise[b] for o, a, b in zip(own, own_idx, noise_idx))


def _n_tokens(min_chars: int) -> int:
    # 토큰 하나는 최소 5자(공백 포함)이므로 이 개수면 min_chars를 넘는다
    return min_chars // 4 + 1


def separable_corpus(
    n_descriptors: int = 20,
    docs_per_descriptor: int = 40,
    vocab_size: int = 50,
    noise_size: int = 30,
    min_chars: int = 2000,
    own_share: float = 0.7,
    seed: int = 0,
) -> SyntheticCorpus:
    """디스크립터별로 분리 가능한 코퍼스 (문서당 gold 디스크립터 1개)"""
    rng = np.random.default_rng(seed)
    thesaurus, vocabularies = _thesaurus_and_vocabularies(n_descriptors, vocab_size)
    noise = tuple(f"n{j:03d}" for j in range(noise_size))
    n_tokens = _n_tokens(min_chars)

    documents = []
    for i in range(n_descriptors):
        d = descriptor_id(i)
        for j in range(docs_per_descriptor):
            documents.append(Document(
                id=f"{d}-{j:03d}",
                text=_text(rng, vocabularies[d], noise, n_tokens, own_share),
                language="en",
                doc_type=DOC_TYPES[j % len(DOC_TYPES)],
                gold_descriptors=frozenset({d}),
            ))

    logger.debug(f"[SYNTH] {n_descriptors}개 디스크립터, {len(documents)}개 문서 생성")
    return SyntheticCorpus(thesaurus, Corpus(tuple(documents)), vocabularies)


def paired_corpus(
    n_descriptors: int = 8,
    docs_per_pair: int = 3,
    vocab_size: int = 50,
    noise_size: int = 30,
    min_chars: int = 2000,
    own_share: float = 0.7,
    seed: int = 0,
) -> SyntheticCorpus:
    """디스크립터 쌍마다 docs_per_pair개 문서 (문서당 gold 디스크립터 2개, Nd_t = 2)

    본문은 두 디스크립터 어휘의 합집합에서 뽑는다.
    """
    rng = np.random.default_rng(seed)
    thesaurus, vocabularies = _thesaurus_and_vocabularies(n_descriptors, vocab_size)
    noise = tuple(f"n{j:03d}" for j in range(noise_size))
    n_tokens = _n_tokens(min_chars)

    documents: List[Document] = []
    for a, b in combinations(range(n_descriptors), 2):
        pair = (descriptor_id(a), descriptor_id(b))
        pool = vocabularies[pair[0]] + vocabularies[pair[1]]
        for j in range(docs_per_pair):
            documents.append(Document(
                id=f"{pair[0]}+{pair[1]}-{j:02d}",
                text=_text(rng, pool, noise, n_tokens, own_share),
                language="en",
                doc_type=DOC_TYPES[j % len(DOC_TYPES)],
                gold_descriptors=frozenset(pair),
            ))

    logger.debug(f"[SYNTH] {n_descriptors}개 디스크립터, {len(documents)}개 문서 생성 (문서당 gold 2개)")
    return SyntheticCorpus(thesaurus, Corpus(tuple(documents)), vocabularies)


def write_synthetic(synthetic: SyntheticCorpus, folder: Union[str, Path]) -> Tuple[Path, Path]:
    """thesaurus.json / corpus.jsonl 저장"""
    folder = Path(folder)
    thesaurus_path = save_thesaurus(synthetic.thesaurus, folder / "thesaurus.json")
    corpus_path = save_corpus(synthetic.corpus, folder / "corpus.jsonl")
    return thesaurus_path, corpus_path
