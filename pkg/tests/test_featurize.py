import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from picprivacy import PRIVATE, PUBLIC
from picprivacy.corpus import ImageRecord
from picprivacy.errors import ComputationError
from picprivacy.featurize import (
    LayerFeaturizer,
    TagFeaturizer,
    build_vocabulary,
    combine_tagsets,
    vectorize,
    write_vocabulary_csv,
)

tag_sets = st.lists(st.sets(st.sampled_from("abcdefgh"), max_size=5), min_size=1, max_size=10)


def test_build_vocabulary_enumeration_and_min_df():
    sets = [{"a", "b"}, {"b", "c"}]
    assert build_vocabulary(sets).index == {"a": 0, "b": 1, "c": 2}
    assert build_vocabulary(sets, min_df=2).index == {"b": 0}


def test_build_vocabulary_empty_corpus():
    with pytest.raises(ComputationError):
        build_vocabulary([])


@given(tag_sets)
def test_vocabulary_is_order_independent(sets):
    forward = build_vocabulary(sets)
    backward = build_vocabulary(list(reversed(sets)))
    assert forward.index == backward.index


def test_vectorize_binary_and_oov():
    vocab = build_vocabulary([{"a", "b"}, {"b", "c"}])
    vec = vectorize({"a", "c"}, vocab)
    assert vec.dim == 3
    assert list(vec.indices) == [0, 2] and list(vec.values) == [1.0, 1.0]
    assert vectorize(set(), vocab).nnz == 0
    assert vectorize({"z"}, vocab).nnz == 0  # out-of-vocabulary ignored


def test_vectorize_count_mode_counts_repeats():
    vocab = build_vocabulary([{"a"}])
    vec = vectorize(["a", "a", "a"], vocab, mode="count")
    assert list(vec.values) == [3.0]
    assert list(vectorize(["a", "a"], vocab, mode="binary").values) == [1.0]


@given(tag_sets, st.sets(st.sampled_from("abcdefghijk"), max_size=8))
def test_vectorize_nnz_is_vocab_intersection(sets, tags):
    vocab = build_vocabulary(sets)
    vec = vectorize(tags, vocab)
    assert vec.nnz == len(tags & set(vocab.index))


def test_combine_tagsets_union_laws():
    a, b = frozenset({"girl"}), frozenset({"maillot", "tank suit"})
    assert combine_tagsets(a, b) == {"girl", "maillot", "tank suit"}
    assert combine_tagsets(a, b) == combine_tagsets(b, a)
    assert combine_tagsets(a, a) == a


def test_layer_featurizer_standardizes_from_train_only():
    train = [ImageRecord(id=f"t{i}", features={"fc8": np.array([float(i), 10.0])})
             for i in range(4)]
    other = ImageRecord(id="x", features={"fc8": np.array([100.0, 10.0])})
    fitted = LayerFeaturizer("fc8", standardize=True).fit(train)
    cols = np.stack([fitted.transform(r) for r in train])
    assert np.allclose(cols.mean(axis=0), 0.0)
    # constant column keeps scale 1 instead of dividing by zero
    assert np.all(np.isfinite(fitted.transform(other)))
    assert fitted.transform(other)[0] > 10  # far outside the train range


def test_tag_featurizer_refits_vocabulary():
    recs = [
        ImageRecord(id="a", user_tags=frozenset({"x"}), label=PUBLIC),
        ImageRecord(id="b", user_tags=frozenset({"y"}), label=PRIVATE),
    ]
    fitted = TagFeaturizer(source="user").fit(recs)
    assert fitted.vocabulary.index == {"x": 0, "y": 1}
    refit = fitted.fit(recs[:1])
    assert refit.vocabulary.index == {"x": 0}


def test_vocabulary_csv_export(tmp_path):
    vocab = build_vocabulary([{"b", "a"}])
    out = tmp_path / "vocab.csv"
    write_vocabulary_csv(out, vocab, header="meta")
    lines = out.read_text().splitlines()
    assert lines[0] == "# meta"
    assert lines[1] == "tag,index"
    assert lines[2:] == ["a,0", "b,1"]
