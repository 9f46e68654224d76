import json
from fractions import Fraction

import pytest

from etf_forge.core.cyclotomic import Cyclotomic
from etf_forge.core.exceptions import UsageError
from etf_forge.models.frame import FrameMatrix, GramMatrix
from etf_forge.schemas.cyclotomic import CyclotomicSchema
from etf_forge.utils.io import load_document, parse_document, write_document


def test_cyclotomic_wire_form():
    z = Cyclotomic(7, [Fraction(1, 3), Fraction(-2, 5)])
    payload = CyclotomicSchema.from_domain(z).model_dump(mode="json")
    assert payload == {"m": 7, "c": [["1", "3"], ["-2", "5"], ["0", "1"], ["0", "1"], ["0", "1"], ["0", "1"]]}
    assert CyclotomicSchema.model_validate(payload).to_domain() == z


def test_cyclotomic_wire_form_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        CyclotomicSchema.model_validate({"m": 7, "c": [["1", "0"]] * 6})
    with pytest.raises(ValueError):
        CyclotomicSchema(m=7, c=[("1", "1")] * 5).to_domain()


@pytest.mark.parametrize("fixture", ["phi7", "phi27", "gram7"])
def test_documents_survive_a_file_round_trip(fixture, request, tmp_path):
    obj = request.getfixturevalue(fixture)
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    write_document(obj, first)
    loaded = load_document(first)
    assert type(loaded) is type(obj)
    assert loaded == obj
    write_document(loaded, second)
    assert second.read_text() == first.read_text()


def test_field_labels_are_written_as_lists(phi27, tmp_path):
    path = tmp_path / "phi27.json"
    write_document(phi27, path)
    document = json.loads(path.read_text())
    assert document["kind"] == "frame"
    assert (document["d"], document["n"]) == (13, 27)
    assert all(isinstance(label, list) and len(label) == 3 for label in document["labels"])
    assert isinstance(load_document(path).labels[0], tuple)


def test_document_kind_is_detected_from_shape(phi7, gram7, tmp_path):
    path = tmp_path / "frame.json"
    write_document(phi7, path)
    payload = json.loads(path.read_text())
    payload.pop("kind")
    assert isinstance(parse_document(payload), FrameMatrix)
    gram_payload = {"m": 7, "n": 1, "labels": [0], "entries": [[{"m": 7, "c": [["3", "1"]] + [["0", "1"]] * 5}]]}
    assert isinstance(parse_document(gram_payload), GramMatrix)


@pytest.mark.parametrize("payload", [
    {"kind": "polytope"},
    {"kind": "frame", "m": 7, "d": 2, "n": 1, "labels": [0], "entries": [[{"m": 7, "c": [["1", "1"]] * 6}]]},
    {"kind": "gram", "m": 7},
])
def test_malformed_documents_are_usage_errors(payload):
    with pytest.raises(UsageError):
        parse_document(payload)


def test_unreadable_file_is_a_usage_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(UsageError):
        load_document(path)
    with pytest.raises(UsageError):
        load_document(tmp_path / "missing.json")
