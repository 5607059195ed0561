"""
코퍼스 로드 / 층화 분할 / 참조 통계 테스트
"""

import json

import pytest

from corpus import Corpus, Document, corpus_stats, load_corpus, merge_stats, save_corpus, split_stratified
from errors import CorpusError


def _write_jsonl(path, records):
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
    return path


def _typed_corpus(per_type: int = 50) -> Corpus:
    docs = [
        Document(id=f"{doc_type}-{i}", text=f"text {i}", doc_type=doc_type, gold_descriptors=frozenset({"D1"}))
        for doc_type in ("legislation", "report")
        for i in range(per_type)
    ]
    return Corpus(tuple(docs))


def test_load_records(tmp_path):
    path = _write_jsonl(tmp_path / "c.jsonl", [
        {"id": "a", "lang": "en", "type": "act", "text": "one", "descriptors": ["D1"]},
        {"id": "b", "lang": "en", "type": "act", "text": "two", "descriptors": ["D1", "D2"]},
        {"id": "c", "lang": "en", "type": "report", "text": "three", "descriptors": []},
    ])
    corpus = load_corpus(path)
    assert [doc.id for doc in corpus] == ["a", "b", "c"]
    assert corpus.documents[1].gold_descriptors == frozenset({"D1", "D2"})
    assert corpus.documents[2].gold_descriptors == frozenset()


def test_missing_text_reports_line(tmp_path):
    path = _write_jsonl(tmp_path / "c.jsonl", [
        {"id": "a", "text": "one"},
        {"id": "b", "descriptors": ["D1"]},
    ])
    with pytest.raises(CorpusError) as excinfo:
        load_corpus(path)
    assert excinfo.value.line == 2


def test_duplicate_id_and_empty_text_rejected(tmp_path):
    with pytest.raises(CorpusError, match="a"):
        load_corpus(_write_jsonl(tmp_path / "dup.jsonl", [{"id": "a", "text": "x"}, {"id": "a", "text": "y"}]))
    with pytest.raises(CorpusError):
        load_corpus(_write_jsonl(tmp_path / "blank.jsonl", [{"id": "a", "text": "   "}]))


def test_save_preserves_order(tmp_path):
    corpus = _typed_corpus(3)
    assert load_corpus(save_corpus(corpus, tmp_path / "c.jsonl")) == corpus


def test_split_zero_fraction():
    corpus = _typed_corpus()
    train, test = split_stratified(corpus, 0.0, seed=1)
    assert len(test) == 0
    assert train == corpus


def test_split_is_stratified():
    train, test = split_stratified(_typed_corpus(), 0.1, seed=3)
    types = [doc.doc_type for doc in test]
    assert types.count("legislation") == 5
    assert types.count("report") == 5
    assert len(train) == 90


def test_split_is_partition_and_deterministic():
    corpus = _typed_corpus(37)
    train, test = split_stratified(corpus, 0.25, seed=5)
    ids = [doc.id for doc in train] + [doc.id for doc in test]
    assert sorted(ids) == sorted(doc.id for doc in corpus)
    assert len(set(ids)) == len(ids)
    assert split_stratified(corpus, 0.25, seed=5) == (train, test)


def test_split_rejects_fraction_out_of_range():
    with pytest.raises(CorpusError):
        split_stratified(_typed_corpus(), 1.5)


def test_corpus_stats_single_document():
    stats = corpus_stats(Corpus((Document(id="1", text="a a b"),)))
    assert stats.doc_count == 1
    assert stats.total_lemma_count == 3
    assert stats.avg_doc_length == 3.0


def test_corpus_stats_additivity():
    first = Corpus((Document(id="1", text="a a"),))
    second = Corpus((Document(id="2", text="a b"),))
    stats = corpus_stats(first + second)
    assert stats.lemma_counts == {"a": 3, "b": 1}
    assert stats.avg_doc_length == 2.0
    assert merge_stats(corpus_stats(first), corpus_stats(second)) == stats


def test_corpus_stats_permutation_invariant():
    corpus = _typed_corpus(5)
    reversed_corpus = Corpus(tuple(reversed(corpus.documents)))
    assert corpus_stats(corpus) == corpus_stats(reversed_corpus)


def test_corpus_stats_empty_corpus():
    with pytest.raises(CorpusError):
        corpus_stats(Corpus())
