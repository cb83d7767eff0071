"""
# Text Embedding Package

## Introduction

The text_embedding package turns a text into the ordered sequence of word vectors
that the rest of the pipeline analyses. It parses pretrained embedding files,
tokenizes input text and looks the tokens up in the loaded model.

## Core Components

- **tokenizer.py**: whitespace tokenizer with punctuation stripping and case folding
- **model.py**: immutable `EmbeddingModel`, `VectorSequence` and `embed_tokens`
- **formats.py**: GloVe text and Word2Vec binary readers and writers

## Features

- Dimension inference for GloVe text files, header-driven loading for Word2Vec binary
- Errors name the offending line (text) or byte offset (binary)
- Duplicate tokens: last occurrence wins, a warning is recorded on the model
- Out-of-vocabulary tokens are skipped and reported, or rejected with the `fail` policy

## Usage

```python
from argutopo.text_embedding.formats import load_model
from argutopo.text_embedding.tokenizer import tokenize, TokenPolicy
from argutopo.text_embedding.model import embed_tokens

model = load_model("glove.840B.300d.txt", "glove-text")
tokens = tokenize("They do not have enough support.", TokenPolicy(lowercase=False))
sequence = embed_tokens(model, tokens, oov="skip")
print(sequence.vectors.shape, sequence.skipped)
```
"""
