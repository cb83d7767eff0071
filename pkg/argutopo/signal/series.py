"""
Time series and point cloud containers with CSV serialization.

CSV files hold one value (series) or one point (cloud) per row, written with 17
significant digits so that reading them back yields the identical floats.
"""

import os
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from argutopo.common.errors import ParseError, SignalError
from argutopo.common.files import atomic_write_text

PathLike = Union[str, os.PathLike]


@dataclass(frozen=True)
class TimeSeries:
    """
    Ordered finite real values z_1..z_N.

    Attributes
    ----------
    values : np.ndarray
        Read-only float64 array of shape ``(N,)``.
    """
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise SignalError(f"a time series must be one-dimensional, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise SignalError("time series values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values: Sequence[float]) -> "TimeSeries":
        return cls(np.asarray(values, dtype=np.float64))

    @property
    def N(self) -> int:
        return int(self.values.shape[0])

    def __len__(self) -> int:
        return self.N

    def is_constant(self) -> bool:
        return self.N == 0 or float(np.ptp(self.values)) == 0.0

    def summary(self) -> str:
        return f"TimeSeries(N={self.N})"


@dataclass(frozen=True)
class PointCloud:
    """
    Finite point cloud.

    Attributes
    ----------
    points : np.ndarray
        Read-only float64 array of shape ``(N_p, D)`` with ``N_p >= 1``.
    """
    points: np.ndarray

    def __post_init__(self):
        points = np.array(self.points, dtype=np.float64)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2 or points.shape[0] < 1 or points.shape[1] < 1:
            raise SignalError(f"a point cloud needs at least one point, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise SignalError("point cloud entries must be finite")
        points.flags.writeable = False
        object.__setattr__(self, "points", points)

    @property
    def n_points(self) -> int:
        return int(self.points.shape[0])

    @property
    def D(self) -> int:
        return int(self.points.shape[1])

    def __len__(self) -> int:
        return self.n_points

    def summary(self) -> str:
        return f"PointCloud(n_points={self.n_points}, D={self.D})"


# -------------------------------
# CSV
# -------------------------------
def _to_csv(rows: np.ndarray) -> str:
    lines = [",".join(format(float(x), ".17g") for x in np.atleast_1d(row)) for row in rows]
    return "\n".join(lines) + "\n"


def write_series_csv(series: TimeSeries, path: PathLike) -> None:
    atomic_write_text(path, _to_csv(series.values))


def write_cloud_csv(cloud: PointCloud, path: PathLike) -> None:
    atomic_write_text(path, _to_csv(cloud.points))


def read_series_csv(path: PathLike) -> TimeSeries:
    """
    Read a one-column CSV file as a time series.

    Raises
    ------
    ParseError
        If a row is not a single float.
    """
    try:
        values = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError as e:
        raise ParseError(f"{path}: {e}") from e
    if values.size and values.shape[1] != 1:
        raise ParseError(f"{path}: expected one value per row, found {values.shape[1]}")
    try:
        return TimeSeries(values.reshape(-1))
    except SignalError as e:
        raise ParseError(f"{path}: {e}") from e


def read_cloud_csv(path: PathLike) -> PointCloud:
    """
    Read a CSV file with one point per row.

    Raises
    ------
    ParseError
        If rows are ragged, non-numeric or non-finite, or the file is empty.
    """
    try:
        points = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
        return PointCloud(points)
    except (ValueError, SignalError) as e:
        raise ParseError(f"{path}: {e}") from e
