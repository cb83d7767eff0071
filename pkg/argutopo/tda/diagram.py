"""
Persistence diagrams and their JSON form.

A diagram is a multiset of ``(dim, birth, death)`` points kept in canonical order
(dimension, then birth, then death, essential classes last), so two diagrams are
equal exactly when they are equal as multisets.

JSON layout::

    {"max_dim": 1,
     "points": [{"dim": 0, "birth": 0.0, "death": 1.5},
                {"dim": 0, "birth": 0.0, "death": null}],
     "metadata": {...}}

Essential classes are written with ``"death": null``.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from argutopo.common.errors import ParseError, TopologyError


@dataclass(frozen=True, order=True)
class PersistencePoint:
    dim: int
    birth: float
    death: float

    def __post_init__(self):
        if not self.death >= self.birth:
            raise TopologyError(f"death {self.death} precedes birth {self.birth}")

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    @property
    def is_essential(self) -> bool:
        return math.isinf(self.death)


@dataclass(frozen=True)
class PersistenceDiagram:
    """
    Multiset of persistence points for homology dimensions ``0..max_dim``.

    Attributes
    ----------
    points : tuple of PersistencePoint
        Canonically sorted points.
    max_dim : int
        Highest homology dimension that was computed.
    metadata : dict
        Free-form description of how the diagram was produced.
    """
    points: Tuple[PersistencePoint, ...]
    max_dim: int
    metadata: Dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points)))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, float, float]], max_dim: int, metadata: Optional[Dict] = None):
        return cls(tuple(PersistencePoint(int(d), float(b), float(e)) for d, b, e in pairs), max_dim, dict(metadata or {}))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def in_dimension(self, dim: int) -> Tuple[PersistencePoint, ...]:
        return tuple(p for p in self.points if p.dim == dim)

    def finite(self, dim: int) -> Tuple[PersistencePoint, ...]:
        return tuple(p for p in self.points if p.dim == dim and not p.is_essential)

    def essential(self, dim: int) -> Tuple[PersistencePoint, ...]:
        return tuple(p for p in self.points if p.dim == dim and p.is_essential)

    def as_array(self, dim: int) -> np.ndarray:
        """``(k, 2)`` array of ``(birth, death)`` for one dimension."""
        rows = [(p.birth, p.death) for p in self.in_dimension(dim)]
        return np.array(rows, dtype=np.float64).reshape(-1, 2)

    def restricted(self, points: Iterable[PersistencePoint], **metadata) -> "PersistenceDiagram":
        """New diagram with the given points, same `max_dim`, metadata extended."""
        return PersistenceDiagram(tuple(points), self.max_dim, {**self.metadata, **metadata})

    def with_metadata(self, **metadata) -> "PersistenceDiagram":
        return PersistenceDiagram(self.points, self.max_dim, {**self.metadata, **metadata})

    def summary(self) -> str:
        counts = ", ".join(f"H{d}={len(self.in_dimension(d))}" for d in range(self.max_dim + 1))
        return f"PersistenceDiagram({counts})"

    # -------------------------------
    # JSON
    # -------------------------------
    def to_dict(self) -> Dict:
        return {
            "max_dim": self.max_dim,
            "points": [
                {"dim": p.dim, "birth": p.birth, "death": None if p.is_essential else p.death}
                for p in self.points
            ],
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, data: Dict) -> "PersistenceDiagram":
        """
        Rebuild a diagram from its dict form.

        Raises
        ------
        ParseError
            If required keys are missing or values are malformed.
        """
        try:
            points = tuple(
                PersistencePoint(
                    int(p["dim"]),
                    float(p["birth"]),
                    math.inf if p["death"] is None else float(p["death"]),
                )
                for p in data["points"]
            )
            return cls(points, int(data["max_dim"]), dict(data.get("metadata") or {}))
        except (KeyError, TypeError, ValueError, TopologyError) as e:
            raise ParseError(f"malformed diagram: {e}") from e

    @classmethod
    def from_json(cls, text: str) -> "PersistenceDiagram":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid diagram JSON: {e.msg}", line=e.lineno) from e
        return cls.from_dict(data)
