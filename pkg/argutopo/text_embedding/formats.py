"""
Readers and writers for pretrained embedding files.

Two on-disk layouts are supported:

GloVe text
    One entry per line, ``token SP f_1 SP ... SP f_d LF``, floats in decimal ASCII.
    The dimension is inferred from the first line. Floats are split off the right
    end of the line, so tokens that contain spaces (present in the Common Crawl
    release) are kept whole. A token whose later words are all numbers is read as
    a line with too many floats.

Word2Vec binary
    ASCII header ``vocab_size SP dimension LF``, then per entry the token bytes
    terminated by 0x20 and `dimension` little-endian IEEE-754 float32 values. An
    optional 0x0A after each entry is tolerated. Token bytes are decoded as UTF-8
    with replacement of invalid sequences.

Functions
---------
load_glove_text, load_word2vec_binary
    Parse a binary stream into an `EmbeddingModel`.
save_glove_text, save_word2vec_binary
    Serialize a model back to the respective layout.
load_model
    Open a model file by path and format name.

Author
------
Andreas Rasmusson
"""

import os
from pathlib import Path
from typing import BinaryIO, Dict, List, Optional, Union

import numpy as np
from loguru import logger

from argutopo.common.errors import ConfigError, ParseError
from argutopo.common.global_logging import log_this
from argutopo.text_embedding.model import EmbeddingModel, SourceFormat

_FLOAT32_LE = np.dtype("<f4")
# first allocation of Word2Vec rows; doubled as entries arrive
_INITIAL_ROWS = 1024

# CLI spellings of the two formats
FORMAT_NAMES = {
    "glove-text": SourceFormat.GLOVE_TEXT,
    "word2vec-bin": SourceFormat.WORD2VEC_BINARY,
    "glove_text": SourceFormat.GLOVE_TEXT,
    "word2vec_binary": SourceFormat.WORD2VEC_BINARY,
}


# -------------------------------
# GloVe text
# -------------------------------
def _is_number(word: str) -> bool:
    try:
        float(word)
    except ValueError:
        return False
    return True


@log_this
def load_glove_text(source: BinaryIO) -> EmbeddingModel:
    """
    Parse a GloVe text embedding stream.

    Parameters
    ----------
    source : binary file-like
        Stream of UTF-8 encoded lines.

    Returns
    -------
    EmbeddingModel
        Model with float64 vectors. Duplicate tokens keep the last vector and add
        a warning to `EmbeddingModel.warnings`.

    Raises
    ------
    ParseError
        On an empty stream, invalid UTF-8, a line whose float count differs from the
        inferred dimension, an unparsable or non-finite float. The error names the
        1-based line number.
    """
    entries: Dict[str, np.ndarray] = {}
    warnings: List[str] = []
    dimension: Optional[int] = None

    for line_no, raw in enumerate(source, start=1):
        try:
            line = raw.decode("utf-8").rstrip("\r\n")
        except UnicodeDecodeError as e:
            raise ParseError(f"invalid UTF-8: {e.reason}", line=line_no) from e
        if not line.strip():
            continue
        if dimension is None:
            dimension = len(line.rstrip(" ").split(" ")) - 1
            if dimension < 1:
                raise ParseError("first line holds no vector components", line=line_no)

        parts = line.rstrip(" ").rsplit(" ", dimension)
        if len(parts) != dimension + 1 or not parts[0]:
            raise ParseError(
                f"expected a token and {dimension} floats, found {len(parts) - 1} fields after the token",
                line=line_no,
            )
        token = parts[0]
        extra = token.split(" ")[1:]
        if extra and all(_is_number(word) for word in extra):
            raise ParseError(
                f"expected a token and {dimension} floats, found {dimension + len(extra)} fields after the token",
                line=line_no,
            )
        try:
            vector = np.array(parts[1:], dtype=np.float64)
        except ValueError as e:
            raise ParseError(f"unparsable float in entry {token!r}", line=line_no) from e
        if not np.all(np.isfinite(vector)):
            raise ParseError(f"non-finite float in entry {token!r}", line=line_no)

        if token in entries:
            message = f"duplicate token {token!r} at line {line_no}; last occurrence wins"
            logger.warning(message)
            warnings.append(message)
        entries[token] = vector

    if dimension is None:
        raise ParseError("empty GloVe stream", line=1)
    tokens = tuple(entries)
    matrix = np.vstack([entries[t] for t in tokens])
    return EmbeddingModel(dimension, tokens, matrix, SourceFormat.GLOVE_TEXT, tuple(warnings))


def save_glove_text(model: EmbeddingModel, target: BinaryIO) -> None:
    """Write `model` in GloVe text layout; floats use their shortest round-trip repr."""
    for token, vector in model.items():
        line = token + " " + " ".join(repr(float(x)) for x in vector) + "\n"
        target.write(line.encode("utf-8"))


# -------------------------------
# Word2Vec binary
# -------------------------------
class _ByteCursor:
    """Buffered forward reader over a binary stream that tracks the byte offset."""

    def __init__(self, stream: BinaryIO, chunk_size: int = 1 << 20):
        self._stream = stream
        self._chunk_size = chunk_size
        self._buffer = b""
        self._pos = 0
        self._base = 0

    @property
    def offset(self) -> int:
        return self._base + self._pos

    def _fill(self) -> bool:
        chunk = self._stream.read(self._chunk_size)
        if not chunk:
            return False
        self._base += self._pos
        self._buffer = self._buffer[self._pos:] + chunk
        self._pos = 0
        return True

    def read_until(self, delimiter: bytes) -> Optional[bytes]:
        """Bytes up to (excluding) `delimiter`, consuming the delimiter; None at EOF."""
        search_from = self._pos
        while True:
            found = self._buffer.find(delimiter, search_from)
            if found >= 0:
                data = self._buffer[self._pos:found]
                self._pos = found + len(delimiter)
                return data
            # _fill drops the consumed prefix, so continue relative to self._pos
            search_from = len(self._buffer) - self._pos
            if not self._fill():
                return None

    def read_exact(self, n: int) -> Optional[bytes]:
        while len(self._buffer) - self._pos < n:
            if not self._fill():
                return None
        data = self._buffer[self._pos:self._pos + n]
        self._pos += n
        return data

    def skip(self, byte: bytes) -> None:
        while True:
            if self._pos >= len(self._buffer) and not self._fill():
                return
            if self._buffer[self._pos:self._pos + 1] != byte:
                return
            self._pos += 1


def _grow(matrix: np.ndarray, limit: int) -> np.ndarray:
    """Copy of `matrix` with room for twice as many rows, at most `limit`."""
    rows = min(limit, max(_INITIAL_ROWS, 2 * matrix.shape[0]))
    grown = np.empty((rows, matrix.shape[1]), dtype=matrix.dtype)
    grown[: matrix.shape[0]] = matrix
    return grown


@log_this
def load_word2vec_binary(source: BinaryIO) -> EmbeddingModel:
    """
    Parse a Word2Vec binary embedding stream.

    Parameters
    ----------
    source : binary file-like
        Stream in the Word2Vec binary layout.

    Returns
    -------
    EmbeddingModel
        Model with exactly the header-declared number of entries, each of the
        header-declared dimension, stored as float32 (bit-exact).

    Raises
    ------
    ParseError
        If the header is not two ASCII integers, or the stream ends before all
        declared entries were read. Errors carry the byte offset.
    """
    cursor = _ByteCursor(source)
    header = cursor.read_until(b"\n")
    try:
        if header is None:
            raise ValueError
        vocab_size, dimension = (int(field) for field in header.decode("ascii").split())
    except (ValueError, UnicodeDecodeError):
        raise ParseError("header must be two ASCII integers 'vocab_size dimension'", offset=0) from None
    if vocab_size < 1 or dimension < 1:
        raise ParseError(f"header declares vocab_size={vocab_size}, dimension={dimension}", offset=0)

    row_bytes = dimension * _FLOAT32_LE.itemsize
    # rows are allocated as payloads arrive, never from the header counts alone
    matrix = np.empty((0, dimension), dtype=_FLOAT32_LE)
    index: Dict[str, int] = {}
    tokens: List[str] = []
    warnings: List[str] = []
    row = 0

    for entry in range(vocab_size):
        cursor.skip(b"\n")
        token_bytes = cursor.read_until(b" ")
        payload = cursor.read_exact(row_bytes) if token_bytes is not None else None
        if payload is None:
            raise ParseError(
                f"stream ended early: expected {vocab_size} entries, read {entry}",
                offset=cursor.offset,
            )
        token = token_bytes.decode("utf-8", errors="replace")
        vector = np.frombuffer(payload, dtype=_FLOAT32_LE)
        if token in index:
            message = f"duplicate token {token!r} at entry {entry + 1}; last occurrence wins"
            logger.warning(message)
            warnings.append(message)
            matrix[index[token]] = vector
            continue
        if row == matrix.shape[0]:
            matrix = _grow(matrix, vocab_size)
        index[token] = row
        tokens.append(token)
        matrix[row] = vector
        row += 1

    return EmbeddingModel(dimension, tuple(tokens), matrix[:row].copy(), SourceFormat.WORD2VEC_BINARY, tuple(warnings))


def save_word2vec_binary(model: EmbeddingModel, target: BinaryIO) -> None:
    """
    Write `model` in Word2Vec binary layout, each entry followed by 0x0A.

    Vectors are stored as little-endian float32; float64 models lose precision.

    Raises
    ------
    ValueError
        If a token contains a space, which the layout cannot represent.
    """
    target.write(f"{len(model)} {model.dimension}\n".encode("ascii"))
    for token, vector in model.items():
        if " " in token:
            raise ValueError(f"token {token!r} contains a space")
        target.write(token.encode("utf-8") + b" ")
        target.write(np.asarray(vector, dtype=_FLOAT32_LE).tobytes())
        target.write(b"\n")


# -------------------------------
# By path
# -------------------------------
def resolve_model_path(path: Union[str, os.PathLike]) -> Path:
    """
    Resolve a model path, falling back to ``$ARGUTOPO_MODEL_DIR/<path>``.

    Raises
    ------
    ConfigError
        If neither the path itself nor the prefixed path exists.
    """
    candidate = Path(path)
    if candidate.exists():
        return candidate
    model_dir = os.getenv("ARGUTOPO_MODEL_DIR")
    if model_dir and not candidate.is_absolute():
        prefixed = Path(model_dir) / candidate
        if prefixed.exists():
            return prefixed
    raise ConfigError(f"model file not found: {path}")


def load_model(path: Union[str, os.PathLike], model_format: Union[str, SourceFormat]) -> EmbeddingModel:
    """
    Load an embedding model file.

    Parameters
    ----------
    path : str or PathLike
        Model file, absolute or relative to the working directory or to
        ``$ARGUTOPO_MODEL_DIR``.
    model_format : str or SourceFormat
        ``glove-text`` or ``word2vec-bin`` (the enum values are accepted too).
    """
    try:
        fmt = FORMAT_NAMES[model_format] if isinstance(model_format, str) else SourceFormat(model_format)
    except (KeyError, ValueError):
        raise ConfigError(f"unknown model format {model_format!r}") from None
    resolved = resolve_model_path(path)
    logger.info("loading {} model from {}", fmt.value, resolved)
    with open(resolved, "rb") as f:
        if fmt is SourceFormat.GLOVE_TEXT:
            return load_glove_text(f)
        return load_word2vec_binary(f)
