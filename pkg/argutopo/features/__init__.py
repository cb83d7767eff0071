"""
# Features Package

## Introduction

The features package post-processes persistence diagrams: it separates
significant features from diagonal noise, summarizes each homology dimension, and
vectorizes diagrams as persistence images.

## Core Components

- **significance.py**: `significant_features`, `diagram_stats`, `DiagramStats`
- **images.py**: `persistence_image`, `default_extent`, `PersistenceImage`

## Features

- Noise threshold is always explicit; reports evaluate several thresholds side by side
- Persistence gap (largest minus second-largest lifetime) per dimension
- Exact per-cell Gaussian integration through the error function
- Images serialize as row-major CSV with a JSON metadata sibling

## Usage

```python
from argutopo.features.significance import diagram_stats, significant_features
from argutopo.features.images import persistence_image

stats = diagram_stats(diagram, noise_threshold=0.1)
loops = significant_features(diagram, dim=1, min_persistence=0.1)
image = persistence_image(diagram, dim=1, resolution=(20, 20))
image.write("h1_image.csv")
```
"""
