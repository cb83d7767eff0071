"""
Euclidean distance matrices of point clouds.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from argutopo.common.errors import TopologyError
from argutopo.signal.series import PointCloud


@dataclass(frozen=True)
class DistanceMatrix:
    """
    Symmetric, finite, non-negative matrix with zero diagonal.

    Off-diagonal zeros are allowed: repeated words produce duplicate points.
    """
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise TopologyError(f"distance matrix must be square, got shape {values.shape}")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise TopologyError("distances must be finite and non-negative")
        if np.any(np.diag(values) != 0):
            raise TopologyError("distance matrix diagonal must be zero")
        if not np.array_equal(values, values.T):
            raise TopologyError("distance matrix must be symmetric")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def summary(self) -> str:
        return f"DistanceMatrix(n={self.n})"


def pairwise_distances(cloud: PointCloud) -> DistanceMatrix:
    """Euclidean distances between all points; symmetric by construction."""
    return DistanceMatrix(squareform(pdist(cloud.points, metric="euclidean")))
