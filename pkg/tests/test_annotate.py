import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import softmax_highprec
from picprivacy.annotate import AnnotationConfig, normalize_user_tags, softmax, top_k_tags
from picprivacy.corpus import CategoryLexicon

finite_logits = st.lists(
    st.floats(min_value=-100.0, max_value=100.0, allow_nan=False),
    min_size=1, max_size=20,
)


def test_softmax_uniform_and_shift_safety():
    assert np.allclose(softmax(np.zeros(4)), 0.25)
    big = softmax(np.array([1000.0, 1000.0]))
    assert np.all(np.isfinite(big)) and np.allclose(big, 0.5)


def test_softmax_against_high_precision_oracle():
    got = softmax(np.array([1.0, 2.0, 3.0]))
    oracle = softmax_highprec([1.0, 2.0, 3.0])
    assert np.max(np.abs(got - oracle)) < 1e-15
    expected = np.array([0.09003057, 0.24472847, 0.66524096])
    assert np.max(np.abs(got - expected)) < 1e-7


def test_softmax_errors():
    with pytest.raises(ValueError):
        softmax(np.array([]))
    with pytest.raises(ValueError):
        softmax(np.array([1.0, np.inf]))


@given(finite_logits)
def test_softmax_sums_to_one(logits):
    probs = softmax(np.array(logits))
    assert abs(probs.sum() - 1.0) < 1e-9
    assert np.all(probs >= 0.0)


@given(finite_logits, st.floats(min_value=-100.0, max_value=100.0, allow_nan=False))
def test_softmax_shift_invariance(logits, shift):
    z = np.array(logits)
    assert np.max(np.abs(softmax(z) - softmax(z + shift))) <= 1e-12


@given(finite_logits)
def test_softmax_preserves_argmax(logits):
    z = np.array(logits)
    assert int(np.argmax(softmax(z))) == int(np.argmax(z))


def _lexicon(*names):
    return CategoryLexicon(tuple(names))


def test_top_k_paper_style_names():
    lex = _lexicon("Maillot", "Tank suit", "beach", "sand", "rock", "tree")
    dist = softmax(np.array([5.0, 4.5, 4.0, 3.5, 3.0, -10.0]))
    tags = top_k_tags(dist, lex, AnnotationConfig(k=5))
    assert {"maillot", "tank suit"} <= tags
    assert len(tags) == 5


def test_top_k_tie_break_and_argmax():
    lex = _lexicon("a", "b", "c")
    assert top_k_tags(np.full(3, 1 / 3), lex, AnnotationConfig(k=2)) == {"a", "b"}
    assert top_k_tags(np.array([0.1, 0.7, 0.2]), lex, AnnotationConfig(k=1)) == {"b"}


def test_top_k_full_lexicon_and_oversized_k():
    lex = _lexicon("a", "b", "c")
    dist = np.array([0.2, 0.5, 0.3])
    assert top_k_tags(dist, lex, AnnotationConfig(k=3)) == {"a", "b", "c"}
    with pytest.raises(ValueError):
        top_k_tags(dist, lex, AnnotationConfig(k=4))


CFG = AnnotationConfig(stopwords=frozenset({"the", "a", "of"}))


def test_normalize_drops_numbers_and_urls():
    got = normalize_user_tags(["Birthday", "party", "2009", "http://a.b/c"], CFG)
    assert got == {"birthday", "party"}


def test_normalize_drops_long_tags_and_stopwords():
    assert normalize_user_tags(["a very long five token tag"], CFG) == frozenset()
    assert normalize_user_tags(["the"], CFG) == frozenset()
    # stopword filtering applies to single tokens only
    assert normalize_user_tags(["the beach"], CFG) == {"the beach"}


def test_normalize_more_url_and_number_shapes():
    got = normalize_user_tags(["www.example.com", "2,009", "1st birthday", "  Nikon D90 "], CFG)
    assert got == {"1st birthday", "nikon d90"}


@given(st.lists(st.text(alphabet=st.characters(codec="ascii"), max_size=24), max_size=12))
@settings(max_examples=200)
def test_normalize_idempotent(raw):
    once = normalize_user_tags(raw, CFG)
    assert normalize_user_tags(once, CFG) == once
