"""
Projection of word vectors onto a fixed random direction.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from argutopo.common.errors import SignalError
from argutopo.common.global_logging import log_this
from argutopo.signal.series import TimeSeries
from argutopo.text_embedding.model import VectorSequence

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class UnitVector:
    """
    Unit-norm direction and the seed that generated it.

    Attributes
    ----------
    components : np.ndarray
        Read-only float64 array of Euclidean norm 1.
    seed : int
        Seed passed to `sample_direction`.
    """
    components: np.ndarray
    seed: int

    @property
    def dimension(self) -> int:
        return int(self.components.shape[0])

    def summary(self) -> str:
        return f"UnitVector(dimension={self.dimension}, seed={self.seed})"


def sample_direction(dimension: int, seed: int) -> UnitVector:
    """
    Draw a reproducible random unit vector.

    Components are i.i.d. standard normal from ``numpy.random.default_rng`` seeded
    with the unsigned 64-bit reading of `seed`, then normalized.

    Parameters
    ----------
    dimension : int
        Number of components, at least 1.
    seed : int
        Generator seed; the same ``(dimension, seed)`` always gives the same vector.

    Raises
    ------
    SignalError
        If `dimension` is less than 1.
    """
    if dimension < 1:
        raise SignalError(f"direction dimension must be at least 1, got {dimension}")
    rng = np.random.default_rng(int(seed) & _SEED_MASK)
    components = rng.standard_normal(int(dimension))
    components = components / np.linalg.norm(components)
    components.flags.writeable = False
    return UnitVector(components, int(seed))


@log_this
def project_series(vectors: Union[VectorSequence, np.ndarray], direction: UnitVector) -> TimeSeries:
    """
    Dot product of every word vector with `direction`, in token order.

    Raises
    ------
    SignalError
        On an empty vector sequence or a dimension mismatch.
    """
    matrix = vectors.vectors if isinstance(vectors, VectorSequence) else np.asarray(vectors)
    if matrix.ndim != 2 or matrix.shape[0] == 0:
        raise SignalError("cannot project an empty vector sequence")
    if matrix.shape[1] != direction.dimension:
        raise SignalError(
            f"vector dimension {matrix.shape[1]} does not match direction dimension {direction.dimension}"
        )
    return TimeSeries(matrix.astype(np.float64) @ direction.components)
