import io
import struct

import numpy as np
import pytest

from argutopo.common.errors import ConfigError, ParseError
from argutopo.text_embedding.formats import (
    load_glove_text,
    load_model,
    load_word2vec_binary,
    save_glove_text,
    save_word2vec_binary,
)
from argutopo.text_embedding.model import SourceFormat

GLOVE = b"win 0.1 -0.25 3.5 1e-3\nsupport 2 0 0 -1\nway 0.333 0.5 0.75 -0.125\n"


def word2vec_bytes(entries, trailing_newline=True):
    dimension = len(next(iter(entries.values())))
    data = f"{len(entries)} {dimension}\n".encode("ascii")
    for token, vector in entries.items():
        data += token.encode("utf-8") + b" " + struct.pack(f"<{dimension}f", *vector)
        if trailing_newline:
            data += b"\n"
    return data


def test_load_glove_text():
    model = load_glove_text(io.BytesIO(GLOVE))
    assert len(model) == 3
    assert model.dimension == 4
    assert model.source_format is SourceFormat.GLOVE_TEXT
    assert model.vector("win").tolist() == [0.1, -0.25, 3.5, 0.001]


def test_glove_round_trip():
    model = load_glove_text(io.BytesIO(GLOVE))
    buffer = io.BytesIO()
    save_glove_text(model, buffer)
    again = load_glove_text(io.BytesIO(buffer.getvalue()))
    assert again.tokens == model.tokens
    assert np.array_equal(again.matrix, model.matrix)


def test_glove_token_with_spaces():
    model = load_glove_text(io.BytesIO(b"a 1 2\nnew york 3 4\n"))
    assert "new york" in model
    assert model.vector("new york").tolist() == [3.0, 4.0]


def test_glove_duplicate_last_wins():
    model = load_glove_text(io.BytesIO(b"a 1 2\na 3 4\n"))
    assert len(model) == 1
    assert model.vector("a").tolist() == [3.0, 4.0]
    assert model.warnings


@pytest.mark.parametrize(
    "data, line",
    [
        (b"a 1 2\nb 1 2 3\n", 2),
        (b"a 1 2\nb 1\n", 2),
        (b"a 1 2\nb 1 x\n", 2),
        (b"a 1 nan\n", 1),
        (b"a 1 2\nb inf 2\n", 2),
    ],
)
def test_glove_malformed(data, line):
    with pytest.raises(ParseError) as excinfo:
        load_glove_text(io.BytesIO(data))
    assert excinfo.value.line == line


def test_glove_empty_stream():
    with pytest.raises(ParseError):
        load_glove_text(io.BytesIO(b""))


def test_load_word2vec_binary():
    data = word2vec_bytes({"win": [0.5, -1.0, 2.0], "support": [1.5, 0.0, -0.25]})
    model = load_word2vec_binary(io.BytesIO(data))
    assert len(model) == 2
    assert model.dimension == 3
    assert model.matrix.dtype == np.float32
    assert model.vector("support").tolist() == [1.5, 0.0, -0.25]


def test_word2vec_round_trip_is_bit_exact():
    rng = np.random.default_rng(1)
    entries = {f"w{i}": rng.standard_normal(5).astype(np.float32).tolist() for i in range(20)}
    data = word2vec_bytes(entries)
    buffer = io.BytesIO()
    save_word2vec_binary(load_word2vec_binary(io.BytesIO(data)), buffer)
    assert buffer.getvalue() == data


def test_word2vec_without_entry_newlines():
    data = word2vec_bytes({"a": [1.0, 2.0], "b": [3.0, 4.0]}, trailing_newline=False)
    model = load_word2vec_binary(io.BytesIO(data))
    assert model.tokens == ("a", "b")


def test_word2vec_truncated():
    data = word2vec_bytes({"a": [1.0, 2.0], "b": [3.0, 4.0]})
    with pytest.raises(ParseError, match="ended early") as excinfo:
        load_word2vec_binary(io.BytesIO(data[:-5]))
    assert excinfo.value.offset is not None


def test_word2vec_declares_more_entries_than_present():
    data = word2vec_bytes({"a": [1.0, 2.0]}).replace(b"1 2\n", b"3 2\n", 1)
    with pytest.raises(ParseError, match="expected 3 entries, read 1"):
        load_word2vec_binary(io.BytesIO(data))


@pytest.mark.parametrize("header", [b"1000000000000 300\n", b"2 1000000000000\n"])
def test_word2vec_huge_header_on_short_stream(header):
    data = header + word2vec_bytes({"a": [1.0, 2.0]}).split(b"\n", 1)[1]
    with pytest.raises(ParseError, match="ended early") as excinfo:
        load_word2vec_binary(io.BytesIO(data))
    assert excinfo.value.offset > 0


def test_word2vec_many_entries():
    entries = {f"w{i}": [float(i), -float(i)] for i in range(2500)}
    model = load_word2vec_binary(io.BytesIO(word2vec_bytes(entries)))
    assert len(model) == 2500
    assert model.tokens[-1] == "w2499"
    np.testing.assert_array_equal(model.matrix[1234], np.array([1234.0, -1234.0], dtype=np.float32))


@pytest.mark.parametrize("header", [b"two 3\n", b"2\n", b""])
def test_word2vec_bad_header(header):
    with pytest.raises(ParseError) as excinfo:
        load_word2vec_binary(io.BytesIO(header))
    assert excinfo.value.offset == 0


def test_load_model_by_path(tmp_path, monkeypatch):
    (tmp_path / "toy.txt").write_bytes(GLOVE)
    assert len(load_model(tmp_path / "toy.txt", "glove-text")) == 3

    monkeypatch.setenv("ARGUTOPO_MODEL_DIR", str(tmp_path))
    assert len(load_model("toy.txt", "glove-text")) == 3

    with pytest.raises(ConfigError):
        load_model("missing.bin", "word2vec-bin")
    with pytest.raises(ConfigError):
        load_model("toy.txt", "fasttext")
