"""
# TDA Package

## Introduction

The tda package computes Vietoris-Rips persistent homology of point clouds and
represents the result as persistence diagrams.

## Core Components

- **distances.py**: `DistanceMatrix` and Euclidean `pairwise_distances`
- **rips.py**: `rips_persistence` (dimensions 0..max_dim) and the `h0_persistence` fast path
- **union_find.py**: disjoint-set structure behind the dimension-0 computation
- **diagram.py**: `PersistenceDiagram` multisets with JSON input/output

## Features

- Deterministic pairing: simplices ordered by (diameter, dimension, lexicographic vertices)
- Clearing between dimensions, batched pivot search with emergent pairs, and stored reduced columns
- Duplicate points are kept; zero-persistence pairs are omitted
- Finite `max_radius` reports classes alive at the cut-off as essential

## Usage

```python
import numpy as np
from argutopo.signal.series import PointCloud
from argutopo.tda.distances import pairwise_distances
from argutopo.tda.rips import rips_persistence

square = PointCloud(np.array([[0, 0], [1, 0], [1, 1], [0, 1]]))
diagram = rips_persistence(pairwise_distances(square), max_dim=1)
print(diagram.in_dimension(1))   # one loop born at 1, dying at sqrt(2)
print(diagram.to_json())
```
"""
