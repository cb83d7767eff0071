"""
Delay embedding and automatic selection of its parameters.

The delay embedding of a series z at dimension D and delay tau is the point cloud
``{(z_n, z_{n+tau}, ..., z_{n+(D-1)tau})}`` with ``N - (D-1)*tau`` points.

Delay selection
---------------
- Autocorrelation: smallest tau whose biased sample autocorrelation drops below a
  threshold (1/e by default).
- Mutual information: first local minimum of the delayed mutual information,
  estimated from an equal-width 2-D histogram over the series range.

Dimension selection
-------------------
- False nearest neighbors with the distance-ratio criterion: a nearest neighbor at
  dimension D is false when the added delay coordinate separates the pair by more
  than `r_tol` times their distance at D.

Every selector has a traced variant (`*_traced`) that also returns the curve it
inspected and the warnings it raised; `choose_delay_parameters` collects these
into the `DelayParameters.method_report`.

Functions
---------
delay_embed
autocorrelation, select_delay_acf
mutual_information, select_delay_mi
false_nearest_fraction, select_dimension_fnn

Dependencies
------------
- numpy: vectorized series arithmetic and 2-D histograms
- scipy.spatial.distance: pairwise distances for the neighbor search
- loguru: fallback warnings

Author
------
Andreas Rasmusson
"""

import math
from typing import Dict, Tuple

import numpy as np
from loguru import logger
from scipy.spatial.distance import pdist, squareform

from argutopo.common.errors import SignalError
from argutopo.common.global_logging import log_this
from argutopo.signal.series import PointCloud, TimeSeries

DEFAULT_ACF_THRESHOLD = 1.0 / math.e
# distances at or below this fraction of the series range count as duplicates
DUPLICATE_TOLERANCE = 1e-9


def record_warning(trace: Dict, message: str) -> None:
    logger.warning(message)
    trace.setdefault("warnings", []).append(message)


def _require_variance(series: TimeSeries) -> None:
    if series.is_constant():
        raise SignalError("zero variance: the series is constant")


# -------------------------------
# Embedding
# -------------------------------
@log_this
def delay_embed(series: TimeSeries, D: int, tau: int) -> PointCloud:
    """
    Delay-embed `series` at dimension `D` and delay `tau`.

    Returns
    -------
    PointCloud
        Exactly ``N - (D-1)*tau`` points; point n is
        ``(z_n, z_{n+tau}, ..., z_{n+(D-1)tau})``, in index order.

    Raises
    ------
    SignalError
        If D or tau is not positive or ``N - (D-1)*tau < 1``.
    """
    N = series.N
    if D < 1 or tau < 1:
        raise SignalError(f"D and tau must be positive, got D={D}, tau={tau}")
    n_rows = N - (D - 1) * tau
    if n_rows < 1:
        raise SignalError(f"series of length N={N} is too short for D={D}, tau={tau}: N - (D-1)*tau = {n_rows} < 1")
    indices = np.arange(n_rows).reshape(-1, 1) + np.arange(D) * tau
    return PointCloud(series.values[indices])


# -------------------------------
# Autocorrelation
# -------------------------------
def _acf_curve(values: np.ndarray, max_lag: int) -> np.ndarray:
    centered = values - values.mean()
    denominator = float(np.dot(centered, centered))
    if denominator == 0.0:
        raise SignalError("zero variance: the series is constant")
    full = np.correlate(centered, centered, mode="full")[len(values) - 1:]
    return full[:max_lag + 1] / denominator


def autocorrelation(series: TimeSeries, lag: int) -> float:
    """
    Biased sample autocorrelation at `lag`.

    ``rho(lag) = sum_n (z_n - mean)(z_{n+lag} - mean) / sum_n (z_n - mean)^2``,
    so ``rho(0) = 1`` and ``|rho| <= 1``.

    Raises
    ------
    SignalError
        If the series is constant ("zero variance") or `lag` is outside ``[0, N)``.
    """
    _require_variance(series)
    if lag < 0 or lag >= series.N:
        raise SignalError(f"lag must satisfy 0 <= lag < N={series.N}, got {lag}")
    return float(_acf_curve(series.values, lag)[lag])


def select_delay_acf_traced(series: TimeSeries, threshold: float = DEFAULT_ACF_THRESHOLD) -> Tuple[int, Dict]:
    """`select_delay_acf` plus the inspected autocorrelation curve and warnings."""
    N = series.N
    if N < 4:
        raise SignalError(f"autocorrelation delay selection needs N >= 4, got N={N}")
    _require_variance(series)
    max_lag = (N - 1) // 2  # lags strictly below N/2
    curve = _acf_curve(series.values, max_lag)
    trace: Dict = {"method": "acf", "threshold": float(threshold), "curve": [float(r) for r in curve[1:]]}
    below = np.flatnonzero(curve[1:] < threshold)
    if below.size:
        tau = int(below[0]) + 1
    else:
        tau = max(N // 4, 1)
        record_warning(trace, f"autocorrelation never dropped below {threshold:.6g} for tau < N/2; using floor(N/4) = {tau}")
    trace["tau"] = tau
    return tau, trace


def select_delay_acf(series: TimeSeries, threshold: float = DEFAULT_ACF_THRESHOLD) -> int:
    """
    Smallest delay tau >= 1 with ``rho(tau) < threshold``.

    If no such tau exists below N/2, ``floor(N/4)`` is returned and a warning is
    logged.

    Raises
    ------
    SignalError
        For N < 4 or a constant series.
    """
    return select_delay_acf_traced(series, threshold)[0]


# -------------------------------
# Mutual information
# -------------------------------
def mutual_information(series: TimeSeries, tau: int, bins: int = 16) -> float:
    """
    Mutual information (nats) between ``z_n`` and ``z_{n+tau}``.

    Estimated from a `bins` x `bins` histogram of equal-width cells spanning the
    range of the whole series; the marginals are the histogram's row and column
    sums, which keeps the estimate non-negative.
    """
    _require_variance(series)
    if tau < 1 or tau >= series.N:
        raise SignalError(f"tau must satisfy 1 <= tau < N={series.N}, got {tau}")
    values = series.values
    lo, hi = float(values.min()), float(values.max())
    joint, _, _ = np.histogram2d(values[:-tau], values[tau:], bins=bins, range=[[lo, hi], [lo, hi]])
    joint = joint / joint.sum()
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    nz = joint > 0
    outer = np.outer(px, py)
    info = float(np.sum(joint[nz] * np.log(joint[nz] / outer[nz])))
    return max(info, 0.0)


def select_delay_mi_traced(series: TimeSeries, bins: int = 16) -> Tuple[int, Dict]:
    """`select_delay_mi` plus the inspected mutual information curve and warnings."""
    N = series.N
    _require_variance(series)
    if bins < 1:
        raise SignalError(f"bins must be positive, got {bins}")
    if N < 4 * bins:
        raise SignalError(f"mutual information with {bins} bins needs N >= {4 * bins}, got N={N}")
    trace: Dict = {"method": "mutual_information", "bins": int(bins), "curve": []}
    tau_limit = (N - 1) // 2  # tau strictly below N/2
    previous = mutual_information(series, 1, bins)
    trace["curve"].append(previous)
    for tau in range(1, tau_limit):
        current = mutual_information(series, tau + 1, bins)
        trace["curve"].append(current)
        if previous < current:
            trace["tau"] = tau
            return tau, trace
        previous = current
    record_warning(trace, "mutual information has no local minimum for tau < N/2; falling back to autocorrelation")
    tau, acf_trace = select_delay_acf_traced(series)
    trace["fallback"] = acf_trace
    trace["tau"] = tau
    return tau, trace


def select_delay_mi(series: TimeSeries, bins: int = 16) -> int:
    """
    First local minimum of the delayed mutual information.

    Returns the first tau with ``I(tau) < I(tau+1)``; when there is none below N/2,
    falls back to `select_delay_acf` with a warning.

    Raises
    ------
    SignalError
        For a constant series or ``N < 4*bins``.
    """
    return select_delay_mi_traced(series, bins)[0]


# -------------------------------
# False nearest neighbors
# -------------------------------
def false_nearest_fraction(series: TimeSeries, D: int, tau: int, r_tol: float = 10.0) -> Tuple[float, int]:
    """
    Fraction of false nearest neighbors at dimension `D`.

    Every point of the D-dimensional embedding that has a coordinate
    ``z_{i+D*tau}`` gets its Euclidean nearest neighbor j (itself and duplicate
    points excluded). The pair is false when
    ``|z_{i+D*tau} - z_{j+D*tau}| / dist_D(i, j) > r_tol``.

    Returns
    -------
    (float, int)
        The false fraction and the number of points that had a non-duplicate
        neighbor. The fraction is 0 when no point had one.
    """
    n_points = series.N - D * tau
    if n_points < 2:
        raise SignalError(f"false nearest neighbors at D={D}, tau={tau} needs N - D*tau >= 2, got {n_points}")
    values = series.values
    cloud = values[np.arange(n_points).reshape(-1, 1) + np.arange(D) * tau]
    extra = values[np.arange(n_points) + D * tau]

    distances = squareform(pdist(cloud))
    duplicate_below = DUPLICATE_TOLERANCE * max(float(np.ptp(values)), np.finfo(float).tiny)
    distances[distances <= duplicate_below] = np.inf

    neighbors = np.argmin(distances, axis=1)
    nearest = distances[np.arange(n_points), neighbors]
    has_neighbor = np.isfinite(nearest)
    considered = int(has_neighbor.sum())
    if considered == 0:
        return 0.0, 0
    ratio = np.abs(extra - extra[neighbors])[has_neighbor] / nearest[has_neighbor]
    return float(np.count_nonzero(ratio > r_tol)) / considered, considered


def select_dimension_fnn_traced(
    series: TimeSeries,
    tau: int,
    max_D: int = 10,
    r_tol: float = 10.0,
    fnn_fraction_threshold: float = 0.01,
) -> Tuple[int, Dict]:
    """`select_dimension_fnn` plus the false-neighbor fraction curve and warnings."""
    if tau < 1 or max_D < 1:
        raise SignalError(f"tau and max_D must be positive, got tau={tau}, max_D={max_D}")
    remaining = series.N - (max_D - 1) * tau
    if remaining < 2:
        raise SignalError(
            f"series too short for false nearest neighbors: need N - (max_D-1)*tau >= 2, "
            f"got N={series.N}, max_D={max_D}, tau={tau}"
        )
    trace: Dict = {
        "method": "false_nearest_neighbors",
        "r_tol": float(r_tol),
        "fraction_threshold": float(fnn_fraction_threshold),
        "max_D": int(max_D),
        "curve": [],
    }
    for D in range(1, max_D):
        fraction, considered = false_nearest_fraction(series, D, tau, r_tol)
        trace["curve"].append({"D": D, "fraction": fraction, "considered": considered})
        if fraction < fnn_fraction_threshold:
            trace["D"] = D
            return D, trace
    if max_D > 1:
        record_warning(trace, f"false neighbor fraction never fell below {fnn_fraction_threshold:g}; using max_D = {max_D}")
    trace["D"] = max_D
    return max_D, trace


def select_dimension_fnn(
    series: TimeSeries,
    tau: int,
    max_D: int = 10,
    r_tol: float = 10.0,
    fnn_fraction_threshold: float = 0.01,
) -> int:
    """
    Smallest embedding dimension with a false-neighbor fraction below threshold.

    Dimensions 1..max_D-1 are tested with `false_nearest_fraction`; if none passes,
    `max_D` is returned with a warning.

    Raises
    ------
    SignalError
        If ``N - (max_D-1)*tau < 2``.
    """
    return select_dimension_fnn_traced(series, tau, max_D, r_tol, fnn_fraction_threshold)[0]
