"""
# Argutopo

## Introduction

The argutopo package analyzes the shape of short texts with persistent homology.
A text is tokenized, its tokens are mapped to pretrained word vectors, the
vectors are projected onto a random direction to give a one-dimensional series,
and that series is delay-embedded into a point cloud. The Vietoris-Rips
persistence diagram of the cloud, compared with the diagram of the raw
word-vector cloud, shows loop-like (1-dimensional) features. The motivating
question is whether circular arguments leave a circle in this embedding.

## Core Components

- **text_embedding/**: tokenizer, embedding model container, GloVe text and word2vec binary readers/writers
- **signal/**: random projection, delay embedding, autocorrelation / mutual information / false-nearest-neighbor parameter selection
- **tda/**: distance matrices, union-find, Rips persistence, persistence diagrams
- **features/**: significance filtering, diagram statistics, persistence images
- **pipeline/**: run configuration, end-to-end analysis, SVG plots and the `argutopo` CLI
- **common/**: exception hierarchy, loguru call logging, atomic file writes
- **yaml_files/**: YAML defaults and their loader
- **data/**: a 50-word toy embedding model and the three reference texts

## Features

### Reproducibility
- Seeded projections; identical inputs and configuration give byte-identical reports
- Deterministic simplex order and pairing in the persistence computation
- Configuration echo and hash in every report

### Parameter selection
- Delay from the autocorrelation threshold or the first mutual information minimum
- Embedding dimension from the false-nearest-neighbor fraction
- Every fallback is logged and kept in the method report

### Outputs
- JSON reports and diagrams, CSV persistence images, SVG diagram plots

## Technical Architecture

Each stage is a pure function over immutable values (`TokenSequence`,
`VectorSequence`, `TimeSeries`, `PointCloud`, `DistanceMatrix`,
`PersistenceDiagram`), so several texts are processed concurrently over one
shared `EmbeddingModel`. The pipeline wraps stage failures in `StageError`, and
the CLI turns them into exit codes.
"""
