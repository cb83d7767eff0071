"""
Global logging infrastructure for argutopo.

This module provides the decorator-based call logging used across the package
together with the single place where the loguru sink is configured. Decorated
functions are logged on success at DEBUG level and on failure at ERROR level with
the full traceback; the original exception is always re-raised so that error
handling behaves exactly as for undecorated functions.

Functions
---------
log_this
    Decorator for automatic function call logging.
configure_logging
    Install the stderr sink with the package log format.
summarize
    Short, loggable description of an argument or result.

Dependencies
------------
- loguru: logging backend
- numpy: shape-aware summaries of array arguments

Author
------
Andreas Rasmusson
"""

import functools
import os
import sys

import numpy as np
from loguru import logger

LOG_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}"
DEFAULT_LEVEL = os.getenv("ARGUTOPO_LOG_LEVEL", "WARNING")


def configure_logging(level: str = DEFAULT_LEVEL) -> None:
    """
    Replace loguru's default handler with a single stderr sink.

    Parameters
    ----------
    level : str
        Minimum level to emit (``"DEBUG"``, ``"INFO"``, ``"WARNING"`` ...).
    """
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format=LOG_FORMAT)


def summarize(value) -> str:
    """Describe a value in one short line (arrays by shape, long text truncated)."""
    if isinstance(value, np.ndarray):
        return f"ndarray{value.shape}"
    if hasattr(value, "summary"):
        return value.summary()
    text = repr(value)
    return text if len(text) <= 80 else text[:77] + "..."


def log_this(func):
    """
    Decorator that logs function calls, results, and exceptions.

    The wrapper records the call at DEBUG level with a summary of its arguments and
    result. If the function raises, the exception is logged at ERROR level with its
    traceback and then re-raised unchanged.

    Parameters
    ----------
    func : callable
        The function to decorate. Its signature and metadata are preserved through
        functools.wraps.

    Returns
    -------
    callable
        The wrapped function.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            try:
                logger.opt(exception=e).error(
                    "{} failed: {}", func.__qualname__, e
                )
            except Exception:
                # Logging failed, keep the original error
                pass
            raise
        try:
            logger.debug(
                "{}({}) -> {}",
                func.__qualname__,
                ", ".join([summarize(a) for a in args] + [f"{k}={summarize(v)}" for k, v in kwargs.items()]),
                summarize(result),
            )
        except Exception:
            pass
        return result
    return wrapper
