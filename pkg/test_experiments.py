"""
전처리 변형 / 베이스라인 옵션 비교 실험 테스트
"""

import json
import logging

import pytest

from baseline import BaselineOptions
from corpus import Corpus, Document, split_stratified
from experiments import (
    ExperimentReport,
    baseline_option_sets,
    preprocess_variants,
    run_baseline_variants,
    run_preprocessing_ablation,
)
from indexing_agent import IndexingAgent
from model_store import build_run_config
from preprocess import PreprocessConfig
from synthetic_corpus import separable_corpus
from trainer import TrainingConfig


@pytest.fixture(scope="module")
def small():
    synthetic = separable_corpus(n_descriptors=5, docs_per_descriptor=20, seed=4)
    train_part, test_part = split_stratified(synthetic.corpus, 0.2, seed=0)
    return synthetic, train_part, test_part


NOISE = frozenset(f"n{j:03d}" for j in range(30))


def test_bare_config_has_one_variant():
    variants = preprocess_variants(PreprocessConfig())
    assert [v.name for v in variants] == ["plain"]
    assert variants[0].settings == {
        "use_lemmas": False, "use_stopwords": False, "stopword_kind": None, "use_multiwords": False,
    }


def test_variants_cover_every_loaded_resource():
    base = PreprocessConfig(
        lemma_dictionary={"fisheries": "fishery"},
        stopwords=frozenset({"the"}),
        multiwords=(("fishery", "resource"),),
    )
    names = [v.name for v in preprocess_variants(base)]
    assert len(names) == 8
    assert names[0] == "plain"
    assert "LEM+SW:corpus_tuned+MW" in names

    stoplists = {"standard": frozenset({"the", "of"}), "corpus_tuned": frozenset({"the"})}
    variants = preprocess_variants(base, stoplists)
    assert len(variants) == 12
    by_name = {v.name: v.config for v in variants}
    assert by_name["SW:standard"].stopwords == frozenset({"the", "of"})
    assert by_name["SW:standard"].stopword_kind == "standard"
    assert by_name["SW:standard"].use_stopwords and not by_name["SW:standard"].use_lemmas


def test_baseline_option_sets_are_distinct():
    sets = baseline_option_sets()
    assert len(sets) == 8
    assert len({name for name, _ in sets}) == 8
    assert len({options for _, options in sets}) == 8
    assert sets[0] == ("label", BaselineOptions())


def test_preprocessing_ablation_scores_each_variant(small):
    _, train_part, test_part = small
    variants = preprocess_variants(PreprocessConfig(), {"standard": NOISE})
    results = run_preprocessing_ablation(train_part, test_part, variants, ranks=(3, 1, 1))

    assert [r.name for r in results] == ["plain", "SW:standard"]
    for result in results:
        assert result.trained == 5
        assert sorted(result.report.rows) == [1, 3]
        assert result.report.documents_evaluated == len(test_part)
        assert result.report.rows[1].precision == 1.0
    assert results[1].settings["stopword_kind"] == "standard"


def test_ablation_with_nothing_trained_reports_zeros(small, caplog):
    _, train_part, test_part = small
    training = TrainingConfig(min_texts_per_descriptor=1000)
    with caplog.at_level(logging.WARNING):
        results = run_preprocessing_ablation(train_part, test_part, preprocess_variants(PreprocessConfig()), training)
    assert results[0].trained == 0
    assert all(s.f_measure == 0.0 for s in results[0].report.rows.values())
    assert results[0].report.documents_evaluated == len(test_part)
    assert any("[WARN]" in r.getMessage() for r in caplog.records)


def test_baseline_variants_separate_non_descriptor_options(fruit_thesaurus):
    test = Corpus((
        Document("d1", "banana bread is sweet", "en", gold_descriptors=frozenset({"6311"})),
        Document("d2", "nothing relevant here", "en", gold_descriptors=frozenset({"100"})),
    ))
    results = {r.name: r for r in run_baseline_variants(test, fruit_thesaurus, "en", ranks=(1,))}
    assert len(results) == 8
    for name, result in results.items():
        expected = 0.5 if "ND" in name else 0.0
        assert result.report.rows[1].precision == pytest.approx(expected)
    assert results["label+ND"].settings == {"use_lemmas": False, "use_stopwords": False, "use_non_descriptors": True}


def test_report_table_and_dict(small, fruit_thesaurus):
    _, train_part, test_part = small
    report = ExperimentReport(
        preprocessing=run_preprocessing_ablation(train_part, test_part, preprocess_variants(PreprocessConfig()),
                                                 ranks=(1, 5)),
        baseline=run_baseline_variants(test_part, fruit_thesaurus, "en", ranks=(1, 5)),
    )
    lines = report.format_table().splitlines()
    assert lines[0] == "Variant\tTrained\tF@1\tF@5"
    assert lines[1].startswith("plain\t5\t100.0\t")
    assert lines[2].startswith("label\t-\t")
    assert len(lines) == 1 + 1 + 8

    data = report.to_dict()
    assert [r["variant"] for r in data["preprocessing"]] == ["plain"]
    assert "trained" not in data["baseline"][0]
    json.dumps(data)
    assert ExperimentReport().format_table() == ""


def test_agent_ablate_saves_one_report(small, tmp_path):
    synthetic, train_part, test_part = small
    config = build_run_config({"paths": {"output_dir": str(tmp_path)}, "corpus": {"language": "en"}})
    agent = IndexingAgent(config)
    agent.thesaurus = synthetic.thesaurus
    report = agent.ablate(train_part, test_part, ranks=(1,))

    assert len(report.preprocessing) == 1 and len(report.baseline) == 8
    saved = json.loads((tmp_path / "ablation_report.json").read_text(encoding="utf-8"))
    assert saved["run_config"]["corpus"] == {"language": "en"}
    assert saved["run_config"]["training"]["p_value"] == 0.15
    assert saved["preprocessing"][0]["evaluation"]["ranks"][0]["precision"] == 1.0
    # 합성 라벨은 본문에 등장하지 않는다
    assert all(r["evaluation"]["ranks"][0]["f_measure"] == 0.0 for r in saved["baseline"])
