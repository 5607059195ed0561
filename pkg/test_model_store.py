"""
모델 저장/로드 + 실행 설정 테스트
"""

import json

import numpy as np
import pytest

from assigner import AssignConfig, assign
from corpus import CorpusStats
from errors import ConfigError, ModelFormatError, ModelVersionError
from model_store import build_run_config, load_model, load_run_config, model_to_dict, save_model
from preprocess import LemmaVector
from synthetic_corpus import separable_corpus
from trainer import FORMAT_VERSION, Model, TrainingConfig, train


def _random_model(rng, model_factory) -> Model:
    lemmas = [f"l{i}" for i in range(30)]
    weights = {}
    for d in range(int(rng.integers(1, 6))):
        chosen = rng.choice(lemmas, size=int(rng.integers(4, 15)), replace=False)
        weights[f"D{d}"] = {str(l): float(rng.uniform(0.001, 50.0)) for l in chosen}
    return model_factory(weights, avg_doc_length=float(rng.uniform(5.0, 40.0)))


def test_save_load_identity(trained_model, tmp_path):
    loaded = load_model(save_model(trained_model, tmp_path / "model.json"))
    assert loaded == trained_model


def test_randomized_persistence_identity(model_factory, tmp_path):
    rng = np.random.default_rng(5)
    lemmas = [f"l{i}" for i in range(30)]
    config = AssignConfig(min_associates_present=2)
    for i in range(50):
        model = _random_model(rng, model_factory)
        loaded = load_model(save_model(model, tmp_path / f"m{i}.json"))
        counts = {str(l): int(rng.integers(1, 6)) for l in rng.choice(lemmas, size=12, replace=False)}
        vector = LemmaVector(counts)
        assert assign(vector, loaded, config) == assign(vector, model, config)


def test_weights_keep_full_precision(tmp_path, model_factory):
    model = model_factory({"D1": {"a": 0.1 + 0.2, "b": 1 / 3, "c": 54.47, "d": 2.0 ** -40}})
    loaded = load_model(save_model(model, tmp_path / "m.json"))
    assert loaded.associate_lists["D1"].weights == model.associate_lists["D1"].weights


def test_empty_model_round_trip(tmp_path):
    empty = Model({}, TrainingConfig(), CorpusStats(1, 3, {"a": 3}, 3.0))
    assert load_model(save_model(empty, tmp_path / "empty.json")) == empty


def test_version_mismatch(trained_model, tmp_path):
    data = model_to_dict(trained_model)
    data["format_version"] = 999
    path = tmp_path / "future.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ModelVersionError) as excinfo:
        load_model(path)
    assert excinfo.value.found == 999
    assert excinfo.value.expected == FORMAT_VERSION


def test_truncated_file(trained_model, tmp_path):
    path = save_model(trained_model, tmp_path / "model.json")
    raw = path.read_text(encoding="utf-8")
    path.write_text(raw[: len(raw) // 2], encoding="utf-8")
    with pytest.raises(ModelFormatError):
        load_model(path)


def test_missing_section_is_format_error(trained_model, tmp_path):
    data = model_to_dict(trained_model)
    del data["reference_stats"]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ModelFormatError):
        load_model(path)


def test_training_is_byte_deterministic(tmp_path):
    corpus = separable_corpus(n_descriptors=5, docs_per_descriptor=10, seed=4).corpus
    first = save_model(train(corpus), tmp_path / "a.json")
    second = save_model(train(corpus), tmp_path / "b.json")
    assert first.read_bytes() == second.read_bytes()


def test_run_config_resolves_paths_and_overrides(tmp_path):
    (tmp_path / "res").mkdir()
    (tmp_path / "res" / "stop.txt").write_text("the\nof\n", encoding="utf-8")
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({
        "preprocess": {"use_stopwords": True, "stopwords": "res/stop.txt"},
        "training": {"p_value": 0.05, "beta": 5},
        "assign": {"combo_weights": [0.5, 0.25, 0.25]},
        "paths": {"thesaurus": "thesaurus.json"},
    }), encoding="utf-8")

    config = load_run_config(config_path, {"training": {"beta": 20.0, "p_value": None}, "assign": {"top_k": 11}})
    assert config.preprocess.stopwords == frozenset({"the", "of"})
    assert config.training.preprocess == config.preprocess
    assert config.training.p_value == 0.05
    assert config.training.beta == 20.0
    assert config.assign.top_k == 11
    assert config.assign.combo_weights == (0.5, 0.25, 0.25)
    assert config.paths.thesaurus == str(tmp_path / "thesaurus.json")


def test_run_config_dict_rebuilds_same_config(tmp_path):
    config = build_run_config({
        "training": {"p_value": 0.05, "workers": 2},
        "assign": {"combo_weights": [0.5, 0.25, 0.25], "top_k": 11, "language": "fr"},
        "paths": {"thesaurus": str(tmp_path / "thesaurus.json"), "output_dir": str(tmp_path / "out")},
        "split": {"test_fraction": 0.2, "seed": 3},
        "corpus": {"language": "fr"},
    })
    data = json.loads(json.dumps(config.to_dict()))
    assert data["corpus"] == {"language": "fr"}
    assert data["preprocess"]["stopwords"] == []
    assert "preprocess" not in data["training"]
    data.pop("preprocess")
    assert build_run_config(data) == config


def test_run_config_defaults_without_file():
    config = load_run_config(None)
    assert config.training.p_value == 0.15
    assert config.training.beta == 10.0
    assert config.assign.min_associates_present == 4
    assert config.assign.combo_weights == (0.4, 0.2, 0.4)


@pytest.mark.parametrize("data", [
    {"training": {"p_value": 1.5}},
    {"assign": {"combo_weights": [0.5, 0.5, 0.5]}},
    {"training": {"unknown_key": 1}},
    {"extra": {}},
    {"preprocess": {"stopwords": "missing.txt"}},
    {"split": {"test_fraction": 2.0}},
])
def test_run_config_errors(data, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ConfigError):
        load_run_config(path)


def test_run_config_invalid_json(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_run_config(path)
