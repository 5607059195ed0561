"""
시소러스 로더 테스트
"""

import json

import pytest

from errors import ThesaurusError, UnknownDescriptorError, UnknownLanguageError
from thesaurus import load_thesaurus, parse_thesaurus, save_thesaurus, surface_forms


def test_single_descriptor():
    raw = json.dumps({"languages": ["en"], "descriptors": [{"id": "1", "labels": {"en": "fisheries"}}]})
    thesaurus = parse_thesaurus(raw)
    assert len(thesaurus) == 1
    assert "1" in thesaurus


def test_duplicate_id_names_descriptor_and_line():
    raw = (
        '{"languages": ["en"], "descriptors": [\n'
        '  {"id": "1234", "labels": {"en": "a"}},\n'
        '  {"id": "1234", "labels": {"en": "b"}}\n'
        ']}'
    )
    with pytest.raises(ThesaurusError, match="1234") as excinfo:
        parse_thesaurus(raw)
    assert excinfo.value.descriptor_id == "1234"
    assert excinfo.value.line == 3


def test_duplicate_line_with_id_language_key():
    raw = (
        '{"languages": ["en", "id"],\n'
        ' "descriptors": [\n'
        '  {"id": "1", "labels": {"en": "fish",\n'
        '                        "id": "ikan"}},\n'
        '  {"id": "2", "labels": {"en": "rice", "id": "nasi"}},\n'
        '  {"labels": {"id": "air", "en": "water"},\n'
        '   "id": "1"}\n'
        ']}'
    )
    with pytest.raises(ThesaurusError) as excinfo:
        parse_thesaurus(raw)
    assert excinfo.value.descriptor_id == "1"
    assert excinfo.value.line == 6


def test_missing_label_for_declared_language(thesaurus_raw):
    data = json.loads(thesaurus_raw)
    del data["descriptors"][1]["labels"]["fr"]
    with pytest.raises(ThesaurusError, match="6311"):
        parse_thesaurus(json.dumps(data))


def test_dangling_link_rejected(thesaurus_raw):
    data = json.loads(thesaurus_raw)
    data["descriptors"][0]["nt"].append("9999")
    with pytest.raises(ThesaurusError, match="9999"):
        parse_thesaurus(json.dumps(data))


def test_non_descriptor_retrievable(fruit_thesaurus):
    descriptor = fruit_thesaurus.get("6311")
    assert descriptor.label("en") == "tropical fruit"
    assert descriptor.non_descriptors["en"] == ("banana",)


def test_label_lookup_by_id(fruit_thesaurus):
    assert fruit_thesaurus.label("2777", "fr") == "gestion des pêches"
    with pytest.raises(UnknownLanguageError):
        fruit_thesaurus.label("2777", "de")
    with pytest.raises(UnknownDescriptorError):
        fruit_thesaurus.label("9999", "en")


def test_hierarchy_inverse_completed(fruit_thesaurus):
    assert fruit_thesaurus.get("6311").broader == ("100",)
    assert fruit_thesaurus.get("100").narrower == ("6311",)
    assert fruit_thesaurus.get("2777").related == ("5001",)


def test_surface_forms(fruit_thesaurus):
    assert surface_forms(fruit_thesaurus, "6311", "en", True) == ["tropical fruit", "banana"]
    assert surface_forms(fruit_thesaurus, "6311", "en", False) == ["tropical fruit"]
    assert surface_forms(fruit_thesaurus, "6311", "fr", True) == ["fruit tropical", "banane"]


def test_surface_forms_errors(fruit_thesaurus):
    with pytest.raises(UnknownDescriptorError):
        surface_forms(fruit_thesaurus, "unknown-id", "en", True)
    with pytest.raises(UnknownLanguageError):
        surface_forms(fruit_thesaurus, "6311", "de", True)


def test_label_only_is_prefix_of_full_forms(fruit_thesaurus):
    for descriptor_id in fruit_thesaurus.descriptors:
        full = surface_forms(fruit_thesaurus, descriptor_id, "en", True)
        assert surface_forms(fruit_thesaurus, descriptor_id, "en", False) == full[:1]


def test_save_and_reload_equal(fruit_thesaurus, tmp_path):
    path = save_thesaurus(fruit_thesaurus, tmp_path / "thesaurus.json")
    assert load_thesaurus(path) == fruit_thesaurus


def test_parse_is_deterministic(thesaurus_raw):
    assert parse_thesaurus(thesaurus_raw) == parse_thesaurus(thesaurus_raw)


def test_invalid_json_reports_line():
    with pytest.raises(ThesaurusError) as excinfo:
        parse_thesaurus('{"languages": ["en"],\n "descriptors": [}')
    assert excinfo.value.line == 2
