"""
라벨 일치 키워드 추출 베이스라인 테스트
"""

import pytest

from baseline import BaselineExtractor, BaselineOptions, extract_descriptors
from errors import UnknownLanguageError
from preprocess import PreprocessConfig


def test_exact_label_found(fruit_thesaurus):
    text = "New rules on Fishery Management in the North Sea."
    assert "2777" in extract_descriptors(text, fruit_thesaurus, "en")


def test_non_descriptor_with_lemmas(fruit_thesaurus):
    options = BaselineOptions(use_lemmas=True, use_non_descriptors=True)
    config = PreprocessConfig(lemma_dictionary={"bananas": "banana"})
    assert "6311" in extract_descriptors("bananas are yellow", fruit_thesaurus, "en", options, config)
    assert "6311" not in extract_descriptors("bananas are yellow", fruit_thesaurus, "en")


def test_empty_text(fruit_thesaurus):
    assert extract_descriptors("", fruit_thesaurus, "en") == set()


def test_partial_label_never_matches(fruit_thesaurus):
    assert extract_descriptors("management of the fishery", fruit_thesaurus, "en") == set()


def test_non_descriptors_never_shrink_result(fruit_thesaurus):
    text = "fruit imports: banana and tropical fruit from fishing vessel owners"
    plain = extract_descriptors(text, fruit_thesaurus, "en")
    widened = extract_descriptors(text, fruit_thesaurus, "en", BaselineOptions(use_non_descriptors=True))
    assert plain <= widened
    assert plain == {"100", "6311", "5001"}


def test_ranked_by_first_occurrence(fruit_thesaurus):
    extractor = BaselineExtractor(fruit_thesaurus, "en")
    text = "A fishing vessel and tropical fruit. Fishery management. Fruit again."
    assert extractor.extract_ranked(text) == ["5001", "6311", "100", "2777"]


def test_other_language(fruit_thesaurus):
    assert extract_descriptors("la gestion des pêches", fruit_thesaurus, "fr") == {"2777"}


def test_unknown_language(fruit_thesaurus):
    with pytest.raises(UnknownLanguageError):
        BaselineExtractor(fruit_thesaurus, "de")
