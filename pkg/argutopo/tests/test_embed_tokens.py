import numpy as np
import pytest

from argutopo.common.errors import VocabularyError
from argutopo.text_embedding.model import EmbeddingModel, OovPolicy, embed_tokens
from argutopo.text_embedding.tokenizer import tokenize

MODEL = EmbeddingModel.from_mapping(
    {
        "there": [1.0, 0.0, 0.0],
        "is": [0.0, 1.0, 0.0],
        "no": [0.0, 0.0, 1.0],
        "way": [1.0, 1.0, 0.0],
    }
)


def test_skip_records_positions():
    vectors = embed_tokens(MODEL, tokenize("There is absolutely no way, camel"))
    assert vectors.tokens == ("there", "is", "no", "way")
    assert vectors.skipped == ((2, "absolutely"), (5, "camel"))
    assert vectors.vectors.shape == (4, 3)
    assert np.array_equal(vectors.vectors[3], [1.0, 1.0, 0.0])


def test_fail_lists_missing_tokens_once():
    with pytest.raises(VocabularyError) as excinfo:
        embed_tokens(MODEL, tokenize("camel no camel hump"), OovPolicy.FAIL)
    assert excinfo.value.missing == ("camel", "hump")


def test_nothing_in_vocabulary():
    vectors = embed_tokens(MODEL, tokenize("camel hump"))
    assert len(vectors) == 0
    assert vectors.dimension == 3


def test_model_is_read_only():
    with pytest.raises(ValueError):
        MODEL.matrix[0, 0] = 5.0
    assert "way" in MODEL
    assert "camel" not in MODEL


def test_concatenation_stacks_vectors_and_shifts_skipped_positions():
    first = tokenize("There is absolutely no")
    second = tokenize("camel way there")
    whole = embed_tokens(MODEL, first + second, OovPolicy.SKIP)
    a = embed_tokens(MODEL, first, OovPolicy.SKIP)
    b = embed_tokens(MODEL, second, OovPolicy.SKIP)
    assert np.array_equal(whole.vectors, np.vstack([a.vectors, b.vectors]))
    assert whole.tokens == a.tokens + b.tokens
    assert whole.skipped == a.skipped + tuple((p + len(first.tokens), t) for p, t in b.skipped)
    assert whole.skipped == ((2, "absolutely"), (4, "camel"))
