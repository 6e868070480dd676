import json

import numpy as np
import pytest

from conftest import write_feature_jsonl, write_labels_csv, write_lines, write_tags_jsonl
from picprivacy import PRIVATE, PUBLIC
from picprivacy.corpus import (
    Dataset,
    ImageRecord,
    assemble,
    count_labels,
    load_feature_table,
    load_labels,
    load_lexicon,
    load_tag_table,
    write_feature_table,
)
from picprivacy.errors import DataFormatError


def test_feature_table_roundtrip_and_order(tmp_path):
    path = write_feature_jsonl(tmp_path / "f.jsonl",
                               [("a", [1.0, 2.0, 3.0]), ("b", [0.5, -0.25, 1e-17])])
    ds = load_feature_table(path, "fc8")
    assert [r.id for r in ds] == ["a", "b"]
    assert ds.layer_dim("fc8") == 3

    out = tmp_path / "copy.jsonl"
    write_feature_table(out, [(r.id, r.features["fc8"]) for r in ds])
    again = load_feature_table(out, "fc8")
    for orig, copy in zip(ds, again):
        assert orig.id == copy.id
        assert np.array_equal(orig.features["fc8"], copy.features["fc8"])


def test_feature_table_dimension_mismatch_names_line(tmp_path):
    path = write_lines(tmp_path / "f.jsonl", [
        json.dumps({"id": "a", "values": [1.0, 2.0, 3.0]}),
        json.dumps({"id": "b", "values": [1.0, 2.0, 3.0, 4.0]}),
    ])
    with pytest.raises(DataFormatError, match=r":2.*'b'"):
        load_feature_table(path, "fc8")


def test_feature_table_malformed_line_number(tmp_path):
    path = write_lines(tmp_path / "f.jsonl", [
        json.dumps({"id": "a", "values": [1.0]}),
        "{not json",
    ])
    with pytest.raises(DataFormatError, match=":2"):
        load_feature_table(path, "fc8")


def test_feature_table_duplicate_id(tmp_path):
    path = write_feature_jsonl(tmp_path / "f.jsonl", [("a", [1.0]), ("a", [2.0])])
    with pytest.raises(DataFormatError, match="duplicate"):
        load_feature_table(path, "fc8")


def test_feature_table_rejects_nonfinite(tmp_path):
    path = write_lines(tmp_path / "f.jsonl",
                       [json.dumps({"id": "a", "values": [1.0, float("nan")]})])
    with pytest.raises(DataFormatError, match="non-finite"):
        load_feature_table(path, "fc8")


def test_feature_table_skips_comment_lines(tmp_path):
    path = write_lines(tmp_path / "f.jsonl", [
        "# tool metadata line",
        json.dumps({"id": "a", "values": [1.0]}),
    ])
    assert len(load_feature_table(path, "fc6")) == 1


def test_tag_table_verbatim(tmp_path):
    path = write_tags_jsonl(tmp_path / "t.jsonl", {
        "img1": ["birthday", "party", "night", "life"],
        "img2": [],
    })
    tags = load_tag_table(path)
    assert tags["img1"] == ["birthday", "party", "night", "life"]
    assert tags["img2"] == []


def test_tag_table_duplicate_id(tmp_path):
    path = write_lines(tmp_path / "t.jsonl", [
        json.dumps({"id": "a", "tags": ["x"]}),
        json.dumps({"id": "a", "tags": ["y"]}),
    ])
    with pytest.raises(DataFormatError, match="duplicate"):
        load_tag_table(path)


def test_labels_case_insensitive_and_counts(tmp_path):
    path = write_lines(tmp_path / "l.csv", [
        "id,label", "a,Private", "b,PUBLIC", "c,public", "d,public",
    ])
    labels = load_labels(path)
    assert labels["a"] == PRIVATE
    assert count_labels(labels) == (3, 1)


def test_labels_unknown_token(tmp_path):
    path = write_lines(tmp_path / "l.csv", ["id,label", "a,unknown"])
    with pytest.raises(DataFormatError, match="unknown label"):
        load_labels(path)


def test_lexicon_small_scale_and_errors(tmp_path):
    path = write_lines(tmp_path / "lex.txt", ["cat", "dog", "tank suit"])
    lex = load_lexicon(path, expected_count=3)
    assert len(lex) == 3 and lex[2] == "tank suit"

    with pytest.raises(DataFormatError, match="expected 1000"):
        load_lexicon(path)  # default expected_count

    blank = write_lines(tmp_path / "blank.txt", ["cat", "", "dog"])
    with pytest.raises(DataFormatError, match=":2"):
        load_lexicon(blank, expected_count=3)


def test_assemble_merges_sources(tmp_path):
    fc8 = load_feature_table(
        write_feature_jsonl(tmp_path / "f.jsonl", [("a", [1.0]), ("b", [2.0])]), "fc8")
    ds = assemble(
        {"fc8": fc8},
        user_tags={"a": {"cat"}, "c": {"dog"}},
        labels={"a": PUBLIC, "b": PRIVATE},
    )
    by_id = ds.by_id
    assert set(by_id) == {"a", "b", "c"}
    assert by_id["a"].user_tags == {"cat"}
    assert by_id["c"].label is None  # unlabeled records are allowed
    assert ds.class_counts == (1, 1)
    assert [r.id for r in ds.labeled()] == ["a", "b"]


def test_dataset_rejects_inconsistent_layer_dims():
    recs = [
        ImageRecord(id="a", features={"fc8": np.array([1.0, 2.0])}),
        ImageRecord(id="b", features={"fc8": np.array([1.0])}),
    ]
    with pytest.raises(DataFormatError, match="dimension"):
        Dataset(recs)
