"""
# Pipeline Package

## Introduction

The pipeline package ties the other packages together. It turns a text and an
embedding model into persistence diagrams twice: once through the word-delay
embedding (projection of the word vectors onto a random direction, followed by a
delay embedding of the resulting series) and once directly on the word-vector
cloud as a baseline. Results are written as JSON reports, diagram files,
optional persistence images and optional SVG plots.

## Core Components

- **config.py**: `RunConfig`, built from `yaml_files/defaults.yaml` plus overrides
- **run.py**: `run_wde`, `run_baseline`, `run_both`, `analyze` and `AnalysisReport`
- **plotting.py**: `emit_plot`, reproducible SVG persistence diagrams
- **cli.py**: the `argutopo` console script (`analyze`, `persistence`, `delay-params`, `image`)

## Features

- Deterministic: same model, text and configuration give byte-identical reports
- Every diagram carries the SHA-256 hash of the configuration that produced it
- Stage-labelled errors mapped to exit codes 1 (usage), 2 (data), 3 (numerical)
- Several input texts analyzed concurrently over one shared model
- `--replicates K` repeats the word-delay embedding over K projection seeds

## Usage

```bash
argutopo analyze --model argutopo/data/toy_model.txt --mode both --seed 0 \
    --out results argutopo/data/texts/*.txt
```

```python
from argutopo.pipeline.config import RunConfig
from argutopo.pipeline.run import run_wde

config = RunConfig.from_yaml_defaults(model_path="argutopo/data/toy_model.txt", tau=1, dim=2)
report = run_wde(config, "There is no way they can win if they do not have enough support.")
print(report.to_json())
```
"""
