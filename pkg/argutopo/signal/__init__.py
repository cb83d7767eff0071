"""
# Signal Package

## Introduction

The signal package turns a word-vector sequence into a scalar series and the
scalar series into a point cloud. Word vectors are projected onto one fixed random
direction; the resulting series is delay-embedded with a dimension and delay that
can be fixed or selected automatically.

## Core Components

- **series.py**: `TimeSeries` and `PointCloud` containers with CSV input/output
- **projection.py**: seeded random unit directions and the dot-product projection
- **delay.py**: delay embedding, autocorrelation and mutual information delay
  selection, false nearest neighbors dimension selection
- **parameters.py**: `DelayParameters` and policy-driven `choose_delay_parameters`

## Features

- Fully deterministic given (series, parameters, seed)
- Every fallback of a selector is logged and recorded in the method report
- Repeated words (duplicate points) are excluded from the false-neighbor test

## Usage

```python
from argutopo.signal.series import TimeSeries
from argutopo.signal.parameters import choose_delay_parameters
from argutopo.signal.delay import delay_embed

series = TimeSeries.of([0.3, -0.1, 0.8, 0.2, -0.5, 0.4, 0.9, -0.7])
params = choose_delay_parameters(series, tau_policy="auto-acf", dim_policy=2)
cloud = delay_embed(series, params.D, params.tau)
```
"""
