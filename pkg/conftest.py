"""
공용 pytest 픽스처
"""

import json
from typing import Dict, Mapping

import pytest

from corpus import CorpusStats, split_stratified
from synthetic_corpus import paired_corpus, separable_corpus
from thesaurus import parse_thesaurus
from trainer import AssociateEntry, AssociateList, Model, TrainingConfig, train

THESAURUS_JSON = {
    "languages": ["en", "fr"],
    "descriptors": [
        {"id": "100", "labels": {"en": "fruit", "fr": "fruit"}, "nt": ["6311"]},
        {
            "id": "6311",
            "labels": {"en": "tropical fruit", "fr": "fruit tropical"},
            "non_descriptors": {"en": ["banana"], "fr": ["banane"]},
        },
        {
            "id": "2777",
            "labels": {"en": "fishery management", "fr": "gestion des pêches"},
            "rt": ["5001"],
        },
        {"id": "5001", "labels": {"en": "fishing vessel", "fr": "navire de pêche"}},
    ],
}


@pytest.fixture
def thesaurus_raw() -> str:
    return json.dumps(THESAURUS_JSON, ensure_ascii=False, indent=2)


@pytest.fixture
def fruit_thesaurus(thesaurus_raw):
    return parse_thesaurus(thesaurus_raw)


@pytest.fixture(scope="session")
def synthetic():
    return separable_corpus()


@pytest.fixture(scope="session")
def synthetic_split(synthetic):
    return split_stratified(synthetic.corpus, 0.1, seed=0)


@pytest.fixture(scope="session")
def trained_model(synthetic_split):
    train_part, _ = synthetic_split
    return train(train_part, TrainingConfig())


@pytest.fixture(scope="session")
def paired():
    """문서마다 gold 디스크립터 2개인 학습 코퍼스"""
    return paired_corpus()


@pytest.fixture(scope="session")
def paired_model(paired):
    return train(paired.corpus)


def _build_model(weights: Mapping[str, Mapping[str, float]], avg_doc_length: float = 10.0) -> Model:
    lists: Dict[str, AssociateList] = {}
    for descriptor_id, lemma_weights in weights.items():
        entries = sorted(
            (AssociateEntry(lemma, float(w), 2, 2) for lemma, w in lemma_weights.items()),
            key=lambda e: (-e.weight, e.lemma),
        )
        lists[descriptor_id] = AssociateList(descriptor_id, tuple(entries))
    reference = CorpusStats(
        doc_count=10,
        total_lemma_count=int(avg_doc_length * 10),
        lemma_counts={},
        avg_doc_length=avg_doc_length,
    )
    return Model(lists, TrainingConfig(), reference)


@pytest.fixture
def model_factory():
    """{descriptor: {lemma: weight}} → Model"""
    return _build_model
