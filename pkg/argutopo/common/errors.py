"""
Exception hierarchy for the argutopo package.

Every failure raised by a pipeline stage derives from `ArgutopoError`. The three
families map one-to-one onto the CLI exit codes:

- `ConfigError`      -> exit 1 (usage / configuration problems)
- `DataError`        -> exit 2 (unreadable or malformed input data)
- `NumericalError`   -> exit 3 (a numerical stage could not produce a result)

`StageError` wraps any of the above with the label of the pipeline stage that
failed, and inherits the exit code of the wrapped cause.

Author
------
Andreas Rasmusson
"""

from typing import Iterable, Optional, Sequence


class ArgutopoError(Exception):
    """Base class for all errors raised by argutopo."""

    exit_code = 2


class ConfigError(ArgutopoError, ValueError):
    """Invalid run configuration or command-line usage."""

    exit_code = 1


class DataError(ArgutopoError, ValueError):
    """Input data could not be used (malformed files, missing vocabulary)."""

    exit_code = 2


class ParseError(DataError):
    """
    An embedding file or CSV file violates its format.

    Parameters
    ----------
    message : str
        Human-readable description of the problem.
    line : int, optional
        1-based line number for line-oriented formats.
    offset : int, optional
        Byte offset for binary formats.
    """

    def __init__(self, message: str, *, line: Optional[int] = None, offset: Optional[int] = None):
        location = ""
        if line is not None:
            location = f" (line {line})"
        elif offset is not None:
            location = f" (byte offset {offset})"
        super().__init__(f"{message}{location}")
        self.line = line
        self.offset = offset


class VocabularyError(DataError):
    """Tokens were not found in the embedding model under the `fail` policy."""

    def __init__(self, missing: Iterable[str]):
        self.missing: Sequence[str] = tuple(missing)
        super().__init__("tokens missing from the embedding model: " + ", ".join(repr(t) for t in self.missing))


class NumericalError(ArgutopoError, ValueError):
    """A numerical stage received input it cannot process."""

    exit_code = 3


class SignalError(NumericalError):
    """Projection, delay selection or delay embedding failed."""


class TopologyError(NumericalError):
    """Persistent homology computation failed."""


class ImageError(NumericalError):
    """Persistence image parameters are invalid."""


class StageError(ArgutopoError):
    """
    Failure of a named pipeline stage.

    Parameters
    ----------
    stage : str
        Name of the stage (e.g. ``"tokenize"``, ``"delay_embed"``).
    cause : ArgutopoError
        The underlying error.
    """

    def __init__(self, stage: str, cause: ArgutopoError):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause
        self.exit_code = cause.exit_code
