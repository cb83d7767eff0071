"""
Embedding model and word-vector sequences.

This module holds the immutable `EmbeddingModel` produced by the format loaders
and `embed_tokens`, which turns a token sequence into the ordered word-vector
sequence the rest of the pipeline works on.

Classes
-------
EmbeddingModel
    Immutable vocabulary -> vector map with a fixed dimension.
VectorSequence
    Ordered word vectors plus the out-of-vocabulary tokens that were dropped.

Functions
---------
embed_tokens
    Look tokens up in a model under the `skip` or `fail` policy.

Author
------
Andreas Rasmusson
"""

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np
from loguru import logger

from argutopo.common.errors import ParseError, VocabularyError
from argutopo.common.global_logging import log_this
from argutopo.text_embedding.tokenizer import TokenSequence


class SourceFormat(str, Enum):
    GLOVE_TEXT = "glove_text"
    WORD2VEC_BINARY = "word2vec_binary"


class OovPolicy(str, Enum):
    SKIP = "skip"
    FAIL = "fail"


@dataclass(frozen=True)
class EmbeddingModel:
    """
    Immutable vocabulary -> vector map.

    Rows of `matrix` are the vectors of `tokens`, in file order. Both the matrix and
    the token index are read-only, so one loaded model can be shared by concurrent
    pipeline runs.

    Attributes
    ----------
    dimension : int
        Length of every vector.
    tokens : tuple of str
        Vocabulary, unique, in first-occurrence order.
    matrix : np.ndarray
        Read-only array of shape ``(len(tokens), dimension)``. float32 for
        word2vec binary models, float64 for GloVe text models.
    source_format : SourceFormat
        Format the model was read from.
    warnings : tuple of str
        Non-fatal issues met while loading (duplicate tokens).
    """
    dimension: int
    tokens: Tuple[str, ...]
    matrix: np.ndarray
    source_format: SourceFormat
    warnings: Tuple[str, ...] = ()
    _index: Mapping[str, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ParseError(f"embedding dimension must be positive, got {self.dimension}")
        if self.matrix.shape != (len(self.tokens), self.dimension):
            raise ParseError(
                f"matrix shape {self.matrix.shape} does not match "
                f"{len(self.tokens)} tokens of dimension {self.dimension}"
            )
        index = {token: row for row, token in enumerate(self.tokens)}
        if len(index) != len(self.tokens):
            raise ParseError("embedding model tokens must be unique")
        self.matrix.flags.writeable = False
        object.__setattr__(self, "_index", MappingProxyType(index))

    @classmethod
    def from_mapping(
        cls,
        entries: Mapping[str, Sequence[float]],
        source_format: SourceFormat = SourceFormat.GLOVE_TEXT,
        dtype=np.float64,
    ) -> "EmbeddingModel":
        """Build a model from an in-memory ``{token: vector}`` mapping."""
        tokens = tuple(entries)
        if not tokens:
            raise ParseError("cannot build an embedding model without entries")
        matrix = np.array([entries[t] for t in tokens], dtype=dtype)
        if matrix.ndim != 2:
            raise ParseError("all vectors must share one dimension")
        return cls(int(matrix.shape[1]), tokens, matrix, SourceFormat(source_format))

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def vector(self, token: str) -> np.ndarray:
        """Return the vector of `token` (raises KeyError when absent)."""
        return self.matrix[self._index[token]]

    def items(self) -> Iterable[Tuple[str, np.ndarray]]:
        for row, token in enumerate(self.tokens):
            yield token, self.matrix[row]

    def summary(self) -> str:
        return f"EmbeddingModel(vocab={len(self.tokens)}, dimension={self.dimension}, format={self.source_format.value})"


@dataclass(frozen=True)
class VectorSequence:
    """
    Word vectors of the in-vocabulary tokens, in token order.

    Attributes
    ----------
    vectors : np.ndarray
        Array of shape ``(n_kept, dimension)``.
    tokens : tuple of str
        The kept tokens, aligned with `vectors`.
    skipped : tuple of (int, str)
        ``(position, token)`` of every out-of-vocabulary token, position being the
        index in the input token sequence.
    """
    vectors: np.ndarray
    tokens: Tuple[str, ...]
    skipped: Tuple[Tuple[int, str], ...] = ()

    def __len__(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    def summary(self) -> str:
        return f"VectorSequence(n={len(self)}, dimension={self.dimension}, skipped={len(self.skipped)})"


@log_this
def embed_tokens(model: EmbeddingModel, tokens: TokenSequence, oov: OovPolicy = OovPolicy.SKIP) -> VectorSequence:
    """
    Map tokens to their word vectors.

    Parameters
    ----------
    model : EmbeddingModel
        Loaded embedding model.
    tokens : TokenSequence or sequence of str
        Tokens in text order.
    oov : OovPolicy
        ``skip`` drops unknown tokens and records them; ``fail`` raises.

    Returns
    -------
    VectorSequence
        Vectors of the known tokens in order, plus the skipped positions.

    Raises
    ------
    VocabularyError
        Under ``oov="fail"`` when any token is missing; lists every missing token.
    """
    oov = OovPolicy(oov)
    kept_rows: List[int] = []
    kept_tokens: List[str] = []
    skipped: List[Tuple[int, str]] = []
    index: Dict[str, int] = model._index
    for position, token in enumerate(tokens):
        row = index.get(token)
        if row is None:
            skipped.append((position, token))
        else:
            kept_rows.append(row)
            kept_tokens.append(token)

    if skipped and oov is OovPolicy.FAIL:
        missing = list(dict.fromkeys(token for _, token in skipped))
        raise VocabularyError(missing)
    if skipped:
        logger.info("skipped {} out-of-vocabulary tokens", len(skipped))

    vectors = model.matrix[kept_rows] if kept_rows else np.empty((0, model.dimension), dtype=model.matrix.dtype)
    return VectorSequence(vectors, tuple(kept_tokens), tuple(skipped))
