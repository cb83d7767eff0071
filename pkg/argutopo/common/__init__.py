"""
# Common Package

## Introduction

Shared infrastructure used by every argutopo stage: the exception hierarchy that
drives CLI exit codes, the `log_this` call-logging decorator, and atomic file
output for reports and plots.

## Core Components

- **errors.py**: `ArgutopoError` and its `ConfigError` / `DataError` / `NumericalError` families
- **global_logging.py**: `log_this` decorator and `configure_logging` (loguru)
- **files.py**: write-then-rename helpers

## Usage

```python
from argutopo.common.global_logging import log_this

@log_this
def my_stage(series):
    # Calls, results and exceptions are logged automatically
    return series
```
"""
