"""
# yaml_files Package

## Introduction

The `yaml_files` package holds the configuration defaults of the analysis
pipeline and the loader used to read them.

## Core Components

### yaml_loading.py
`load_yaml()` reads a bundled file by name (or any YAML file by path) and parses it with
PyYAML's `safe_load`, raising `ConfigError` for unreadable or malformed files.

### defaults.yaml
Run defaults grouped by concern:
- **run**: model location and format, mode, projection seed, replicates
- **tokenizer**: casing, punctuation and out-of-vocabulary policy
- **delay**: delay and dimension selection policies and their knobs
- **homology**: maximum homology dimension and filtration radius
- **features**: noise thresholds and persistence image settings
- **output**: output directory and plotting

## Usage

```python
from argutopo.yaml_files.yaml_loading import load_yaml

defaults = load_yaml("defaults.yaml")
tau_policy = defaults["delay"]["tau"]
```
"""
