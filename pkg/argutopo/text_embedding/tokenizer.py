"""
Whitespace tokenizer with optional punctuation stripping and case folding.

Tokens keep a reference to the span of the source text they came from, so that
reports can point back into the original argument.
"""

import re
import unicodedata
from dataclasses import dataclass
from typing import Tuple

_WORD_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class TokenPolicy:
    lowercase: bool = True
    strip_punctuation: bool = True


@dataclass(frozen=True)
class TokenSequence:
    """
    Ordered tokens of a text.

    Attributes
    ----------
    tokens : tuple of str
        Tokens in occurrence order.
    spans : tuple of (int, int)
        Half-open character span ``[start, end)`` of each token in the source text,
        after punctuation stripping.
    """
    tokens: Tuple[str, ...]
    spans: Tuple[Tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __add__(self, other: "TokenSequence") -> "TokenSequence":
        return TokenSequence(self.tokens + other.tokens, self.spans + other.spans)

    def summary(self) -> str:
        return f"TokenSequence(n={len(self.tokens)})"


def _is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str, policy: TokenPolicy = TokenPolicy()) -> TokenSequence:
    """
    Split `text` on Unicode whitespace.

    Parameters
    ----------
    text : str
        Source text.
    policy : TokenPolicy
        With `strip_punctuation`, leading and trailing punctuation characters are
        removed from every token (inner apostrophes such as in "it's" survive).
        With `lowercase`, tokens are case-folded.

    Returns
    -------
    TokenSequence
        Non-empty tokens in occurrence order. Empty text yields an empty sequence.
    """
    tokens = []
    spans = []
    for match in _WORD_RE.finditer(text):
        start, end = match.span()
        if policy.strip_punctuation:
            while start < end and _is_punctuation(text[start]):
                start += 1
            while end > start and _is_punctuation(text[end - 1]):
                end -= 1
        token = text[start:end]
        if policy.lowercase:
            token = token.casefold()
        if token:
            tokens.append(token)
            spans.append((start, end))
    return TokenSequence(tuple(tokens), tuple(spans))
