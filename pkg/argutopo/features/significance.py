"""
Noise separation and summary statistics of persistence diagrams.

Points close to the diagonal (short-lived features) are read as noise. There is no
universal cut-off, so every function here takes the persistence threshold
explicitly.
"""

from dataclasses import asdict, dataclass
from typing import Dict, Optional, Tuple

from argutopo.common.errors import NumericalError
from argutopo.tda.diagram import PersistenceDiagram


def _check_threshold(value: float) -> None:
    if not value >= 0:
        raise NumericalError(f"persistence threshold must be non-negative, got {value}")


def significant_features(diagram: PersistenceDiagram, dim: int, min_persistence: float) -> PersistenceDiagram:
    """
    Points of dimension `dim` at least `min_persistence` away from the diagonal.

    Returns
    -------
    PersistenceDiagram
        Finite points with ``death - birth >= min_persistence`` plus every essential
        point of that dimension.
    """
    _check_threshold(min_persistence)
    kept = [p for p in diagram.in_dimension(dim) if p.is_essential or p.persistence >= min_persistence]
    return diagram.restricted(kept, significance={"dim": dim, "min_persistence": float(min_persistence)})


@dataclass(frozen=True)
class DimensionStats:
    dim: int
    count: int
    finite_count: int
    essential_count: int
    # None when the dimension has no finite points
    max_persistence: Optional[float]
    count_above: int
    # largest minus second-largest finite persistence
    persistence_gap: Optional[float]


@dataclass(frozen=True)
class DiagramStats:
    """Per-dimension counts and persistence extremes at one noise threshold."""
    noise_threshold: float
    dimensions: Tuple[DimensionStats, ...]

    def for_dim(self, dim: int) -> DimensionStats:
        return next(s for s in self.dimensions if s.dim == dim)

    def to_dict(self) -> Dict:
        return {"noise_threshold": self.noise_threshold, "dimensions": [asdict(s) for s in self.dimensions]}


def diagram_stats(diagram: PersistenceDiagram, noise_threshold: float) -> DiagramStats:
    """
    Summarize every dimension ``0..max_dim`` of `diagram`.

    `count_above` is the number of points `significant_features` keeps at
    `noise_threshold` (essential points included).
    """
    _check_threshold(noise_threshold)
    dimensions = []
    for dim in range(diagram.max_dim + 1):
        points = diagram.in_dimension(dim)
        lifetimes = sorted((p.persistence for p in points if not p.is_essential), reverse=True)
        essential = sum(1 for p in points if p.is_essential)
        dimensions.append(
            DimensionStats(
                dim=dim,
                count=len(points),
                finite_count=len(lifetimes),
                essential_count=essential,
                max_persistence=lifetimes[0] if lifetimes else None,
                count_above=essential + sum(1 for life in lifetimes if life >= noise_threshold),
                persistence_gap=lifetimes[0] - lifetimes[1] if len(lifetimes) > 1 else None,
            )
        )
    return DiagramStats(float(noise_threshold), tuple(dimensions))
