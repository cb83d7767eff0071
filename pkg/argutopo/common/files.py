"""
Atomic file output.

Reports, diagrams and images are written to a temporary file in the target
directory and renamed into place, so concurrent pipeline runs never expose a
half-written artifact.
"""

import os
import tempfile
from pathlib import Path
from typing import Union

PathLike = Union[str, os.PathLike]


def atomic_write_bytes(path: PathLike, data: bytes) -> Path:
    """
    Write `data` to `path` via write-then-rename.

    Parameters
    ----------
    path : str or PathLike
        Destination file. Parent directories are created if needed.
    data : bytes
        File content.

    Returns
    -------
    Path
        The destination path.

    Raises
    ------
    OSError
        If the directory or file cannot be written.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return target


def atomic_write_text(path: PathLike, text: str) -> Path:
    """UTF-8 variant of `atomic_write_bytes`; newlines are written as LF."""
    return atomic_write_bytes(path, text.encode("utf-8"))
