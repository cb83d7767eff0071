"""
Delay-parameter policies.

A policy is either the name of an automatic method (``auto-acf``, ``auto-mi`` for
the delay, ``auto-fnn`` for the dimension) or a fixed positive integer.
`choose_delay_parameters` applies both policies to a series and records how each
value was obtained.
"""

from dataclasses import dataclass, field
from typing import Dict, Union

from argutopo.common.errors import SignalError
from argutopo.common.global_logging import log_this
from argutopo.signal.delay import (
    DEFAULT_ACF_THRESHOLD,
    record_warning,
    select_delay_acf_traced,
    select_delay_mi_traced,
    select_dimension_fnn_traced,
)
from argutopo.signal.series import TimeSeries

TAU_METHODS = ("auto-acf", "auto-mi")
DIM_METHODS = ("auto-fnn",)

Policy = Union[str, int]


@dataclass(frozen=True)
class DelayParameters:
    """
    Embedding dimension and delay with the record of how they were chosen.

    Attributes
    ----------
    D : int
    tau : int
    method_report : dict
        ``{"tau": {...}, "D": {...}}`` traces of the selection methods.
    """
    D: int
    tau: int
    method_report: Dict = field(default_factory=dict, compare=False)

    def point_count(self, N: int) -> int:
        return N - (self.D - 1) * self.tau

    def summary(self) -> str:
        return f"DelayParameters(D={self.D}, tau={self.tau})"


def parse_policy(value: Policy, methods) -> Policy:
    """Normalize a policy: method names pass through, anything else must be a positive int."""
    if isinstance(value, str) and value in methods:
        return value
    try:
        fixed = int(value)
    except (TypeError, ValueError):
        raise SignalError(f"policy must be one of {', '.join(methods)} or a positive integer, got {value!r}") from None
    if fixed < 1:
        raise SignalError(f"fixed policy values must be positive, got {fixed}")
    return fixed


@log_this
def choose_delay_parameters(
    series: TimeSeries,
    tau_policy: Policy = "auto-acf",
    dim_policy: Policy = "auto-fnn",
    *,
    acf_threshold: float = DEFAULT_ACF_THRESHOLD,
    mi_bins: int = 16,
    fnn_max_dim: int = 10,
    fnn_r_tol: float = 10.0,
    fnn_threshold: float = 0.01,
) -> DelayParameters:
    """
    Select (D, tau) for `series` according to the two policies.

    The delay is chosen first, then the dimension at that delay. For short series
    the mutual information bin count is reduced to ``N // 4`` and the false-neighbor
    search is limited to the largest dimension that still leaves two points; both
    adjustments are recorded as warnings.

    Raises
    ------
    SignalError
        On invalid policies, or if the chosen parameters leave fewer than one
        embedded point.
    """
    tau_policy = parse_policy(tau_policy, TAU_METHODS)
    dim_policy = parse_policy(dim_policy, DIM_METHODS)
    N = series.N
    report: Dict = {}

    if tau_policy == "auto-acf":
        tau, report["tau"] = select_delay_acf_traced(series, acf_threshold)
    elif tau_policy == "auto-mi":
        bins = mi_bins
        adjustments: Dict = {}
        if N < 4 * bins:
            bins = max(N // 4, 1)
            record_warning(adjustments, f"series of length {N} too short for {mi_bins} bins; using {bins}")
        tau, report["tau"] = select_delay_mi_traced(series, bins)
        report["tau"].setdefault("warnings", [])[:0] = adjustments.get("warnings", [])
    else:
        tau = tau_policy
        report["tau"] = {"method": "fixed", "tau": tau}

    if dim_policy == "auto-fnn":
        max_D = fnn_max_dim
        feasible = (N - 2) // tau + 1
        if feasible < 1:
            raise SignalError(f"{N} points cannot be delay-embedded with tau={tau}: need at least 2 values")
        adjustments = {}
        if feasible < max_D:
            record_warning(adjustments, f"series of length {N} at tau={tau} limits the dimension search to max_D={feasible}")
            max_D = feasible
        D, report["D"] = select_dimension_fnn_traced(series, tau, max_D, fnn_r_tol, fnn_threshold)
        report["D"].setdefault("warnings", [])[:0] = adjustments.get("warnings", [])
    else:
        D = dim_policy
        report["D"] = {"method": "fixed", "D": D}

    if N - (D - 1) * tau < 1:
        raise SignalError(f"series of length N={N} is too short for D={D}, tau={tau}")
    return DelayParameters(D, tau, report)
