"""
Vietoris-Rips persistent homology.

The Rips filtration enters a simplex at the largest pairwise distance among its
vertices. Simplices are totally ordered by (diameter, dimension, lexicographic
vertex tuple), which makes every pairing reproducible bit for bit.

Algorithm
---------
Dimension 0 is computed with union-find over the edges in filtration order
(Kruskal). Higher dimensions are computed on the coboundary matrix, one dimension
at a time in increasing order:

- columns are the d-simplices in reverse filtration order, minus those already
  paired as deaths in dimension d-1 (clearing);
- the pivot of a column is its earliest cofacet in filtration order;
- the pivots of the unreduced columns are computed in vectorized batches, and a
  column whose pivot is still free is paired without reduction (emergent pair);
- only the remaining columns are reduced; their reduced columns are stored by
  pivot, while emergent columns are recomputed on demand.

The resulting pairs are those of the standard boundary-matrix reduction. Pairs
with equal birth and death are dropped from the diagram.

Every distinct edge length gets a rank. A simplex with sorted vertex tuple
``(v_0, ..., v_{L-1})`` has the code ``sum_q v_q * n**(L-1-q)`` and the
filtration key ``rank(diameter) * n**L + code``, so integer comparison of keys is
the filtration order within one dimension.

Functions
---------
rips_persistence
    Diagram of homology dimensions ``0..max_dim``.
h0_persistence
    Dimension-0 diagram only (minimum spanning tree).

Dependencies
------------
- numpy: vectorized simplex enumeration, cofacet keys and column arithmetic
- loguru: progress at DEBUG level

Author
------
Andreas Rasmusson
"""

import itertools
import math
from typing import Dict, List, Set, Tuple, Union

import numpy as np
from loguru import logger

from argutopo.common.errors import TopologyError
from argutopo.common.global_logging import log_this
from argutopo.tda.diagram import PersistenceDiagram
from argutopo.tda.distances import DistanceMatrix
from argutopo.tda.union_find import UnionFind

ALGORITHM = "union-find (H0) + coboundary column reduction with clearing and emergent pairs"
# marks "no cofacet" in key arrays
_NO_KEY = np.iinfo(np.int64).max
# entries per batch of cofacet keys
_BATCH = 1 << 21


def _radius_metadata(max_radius: float):
    return None if math.isinf(max_radius) else float(max_radius)


def _check(distances: DistanceMatrix, max_radius: float) -> None:
    if distances.n == 0:
        raise TopologyError("cannot compute persistence of an empty point cloud")
    if not max_radius >= 0:
        raise TopologyError(f"max_radius must be non-negative, got {max_radius}")


# -------------------------------
# Dimension 0
# -------------------------------
def _zero_dimensional(values: np.ndarray, max_radius: float) -> Tuple[List[float], int, Set[int]]:
    """Finite H0 deaths, number of essential components, and codes of merging edges."""
    n = values.shape[0]
    rows, cols = np.triu_indices(n, k=1)
    lengths = values[rows, cols]
    inside = lengths <= max_radius
    rows, cols, lengths = rows[inside], cols[inside], lengths[inside]
    order = np.lexsort((cols, rows, lengths))

    components = UnionFind(n)
    deaths: List[float] = []
    merging: Set[int] = set()
    for e in order:
        i, j = int(rows[e]), int(cols[e])
        if components.union(i, j):
            deaths.append(float(lengths[e]))
            merging.add(i * n + j)
            if components.num_components == 1:
                break
    return deaths, components.num_components, merging


@log_this
def h0_persistence(distances: DistanceMatrix, max_radius: float = math.inf) -> PersistenceDiagram:
    """
    Dimension-0 Rips persistence via a minimum spanning tree.

    Returns
    -------
    PersistenceDiagram
        One ``(0, inf)`` class per connected component at `max_radius` and one
        ``(0, length)`` class per merging edge of positive length.

    Raises
    ------
    TopologyError
        On an empty distance matrix.
    """
    _check(distances, max_radius)
    deaths, essential, _ = _zero_dimensional(distances.values, max_radius)
    pairs = [(0, 0.0, d) for d in deaths if d > 0.0] + [(0, 0.0, math.inf)] * essential
    return PersistenceDiagram.from_pairs(
        pairs, 0, {"algorithm": "minimum spanning tree", "n_points": distances.n, "max_radius": _radius_metadata(max_radius)}
    )


# -------------------------------
# Higher dimensions
# -------------------------------
class _EdgeRanks:
    """Distinct edge lengths and the rank of every pairwise distance among them."""

    def __init__(self, values: np.ndarray, max_radius: float):
        n = values.shape[0]
        self.n = n
        self.lengths = np.unique(values[np.triu_indices(n, k=1)])
        self.ranks = np.searchsorted(self.lengths, values).astype(np.int64)
        # highest rank inside the filtration cut-off (-1 when no edge is inside)
        self.limit = int(np.searchsorted(self.lengths, max_radius, side="right")) - 1


class _Cofacets:
    """Filtration keys of the cofacets of dim-simplices."""

    def __init__(self, edges: _EdgeRanks, dim: int):
        n = edges.n
        self.edges = edges
        self.length = dim + 2  # vertices of a cofacet
        if len(edges.lengths) * n ** self.length >= 2 ** 63:
            raise TopologyError(f"{n} points are too many for homology in dimension {dim}")
        self.scale = np.int64(n ** self.length)
        self.powers = n ** np.arange(self.length - 1, -1, -1, dtype=np.int64)
        self.vertices = np.arange(n, dtype=np.int64)[None, :]

    def keys(self, simplices: np.ndarray, ranks: np.ndarray) -> np.ndarray:
        """``(m, n)`` keys of ``simplex + {k}`` for every vertex k; `_NO_KEY` where there is none."""
        k = self.vertices
        reach = np.repeat(ranks[:, None], k.shape[1], axis=1)
        valid = np.ones(reach.shape, dtype=bool)
        below = np.zeros(reach.shape, dtype=np.int64)
        code = np.zeros(reach.shape, dtype=np.int64)
        for q in range(self.length - 1):
            v = simplices[:, q:q + 1]
            np.maximum(reach, self.edges.ranks[simplices[:, q]], out=reach)
            valid &= v != k
            below += v < k
            # v keeps slot q when k comes after it and moves to q + 1 otherwise
            code += v * self.powers[q + (v > k)]
        code += k * self.powers[below]
        valid &= reach <= self.edges.limit
        keys = reach * self.scale + code
        keys[~valid] = _NO_KEY
        return keys

    def pivots(self, simplices: np.ndarray, ranks: np.ndarray) -> np.ndarray:
        step = max(1, _BATCH // self.edges.n)
        batches = [
            self.keys(simplices[s:s + step], ranks[s:s + step]).min(axis=1) for s in range(0, len(simplices), step)
        ]
        return np.concatenate(batches) if batches else np.empty(0, dtype=np.int64)

    def column(self, simplex: np.ndarray, rank: np.int64) -> np.ndarray:
        """Sorted keys of the coboundary of one simplex."""
        keys = self.keys(simplex[None, :], np.array([rank], dtype=np.int64))[0]
        return np.sort(keys[keys != _NO_KEY])


def _enumerate(edges: _EdgeRanks, dim: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All dim-simplices within the cut-off: vertex array, diameter ranks, codes."""
    n = edges.n
    k = dim + 1
    if n < k:
        return np.empty((0, k), dtype=np.int64), np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    simplices = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n), k)), dtype=np.int64
    ).reshape(-1, k)
    ranks = np.zeros(simplices.shape[0], dtype=np.int64)
    for a, b in itertools.combinations(range(k), 2):
        np.maximum(ranks, edges.ranks[simplices[:, a], simplices[:, b]], out=ranks)
    codes = simplices @ (n ** np.arange(k - 1, -1, -1, dtype=np.int64))
    inside = ranks <= edges.limit
    return simplices[inside], ranks[inside], codes[inside]


def _reduce_dimension(
    edges: _EdgeRanks, dim: int, cleared: Set[int]
) -> Tuple[List[Tuple[float, float]], List[float], Set[int]]:
    """
    Pair the dim-simplices with (dim+1)-simplices.

    Returns the finite ``(birth, death)`` pairs (zero-length ones included), the
    births of essential classes, and the codes of the (dim+1)-simplices that were
    paired, which the next dimension clears.
    """
    simplices, ranks, codes = _enumerate(edges, dim)
    if cleared:
        keep = ~np.isin(codes, np.fromiter(cleared, dtype=np.int64, count=len(cleared)))
        simplices, ranks, codes = simplices[keep], ranks[keep], codes[keep]
    order = np.lexsort((codes, ranks))[::-1]
    simplices, ranks = simplices[order], ranks[order]

    cofacets = _Cofacets(edges, dim)
    candidates = cofacets.pivots(simplices, ranks).tolist()
    # pivot key -> index of an emergent column, or the stored reduced column
    owners: Dict[int, Union[int, np.ndarray]] = {}
    pairs: List[Tuple[float, float]] = []
    essential: List[float] = []
    lengths = edges.lengths
    reductions = 0

    for c, pivot in enumerate(candidates):
        birth = float(lengths[ranks[c]])
        if pivot == _NO_KEY:
            essential.append(birth)
            continue
        if pivot not in owners:
            owners[pivot] = c
            pairs.append((birth, float(lengths[pivot // cofacets.scale])))
            continue

        column = cofacets.column(simplices[c], ranks[c])
        while column.size:
            owner = owners.get(int(column[0]))
            if owner is None:
                break
            if not isinstance(owner, np.ndarray):
                owner = cofacets.column(simplices[owner], ranks[owner])
            column = np.setxor1d(column, owner, assume_unique=True)
            reductions += 1
        if column.size == 0:
            essential.append(birth)
            continue
        pivot = int(column[0])
        owners[pivot] = column
        pairs.append((birth, float(lengths[pivot // cofacets.scale])))

    logger.debug(
        "dimension {}: {} columns, {} pairs, {} essential, {} column additions",
        dim, len(candidates), len(pairs), len(essential), reductions,
    )
    return pairs, essential, {int(p % cofacets.scale) for p in owners}


@log_this
def rips_persistence(distances: DistanceMatrix, max_dim: int = 1, max_radius: float = math.inf) -> PersistenceDiagram:
    """
    Vietoris-Rips persistence diagram in dimensions ``0..max_dim``.

    Parameters
    ----------
    distances : DistanceMatrix
        Pairwise distances; duplicate points (zero off-diagonal entries) are allowed.
    max_dim : int
        Highest homology dimension, 1 by default. Dimension 2 is supported but the
        number of triangles grows cubically with the point count.
    max_radius : float
        Filtration cut-off. Classes still alive at `max_radius` are reported with
        infinite death.

    Returns
    -------
    PersistenceDiagram
        Points with ``death > birth``; `metadata` records the algorithm, point
        count, `max_dim` and `max_radius` (``None`` when unbounded).

    Raises
    ------
    TopologyError
        On an empty distance matrix, negative `max_dim` or negative `max_radius`.
    """
    _check(distances, max_radius)
    if max_dim < 0:
        raise TopologyError(f"max_dim must be non-negative, got {max_dim}")
    values = distances.values

    deaths, components, cleared = _zero_dimensional(values, max_radius)
    points = [(0, 0.0, d) for d in deaths if d > 0.0] + [(0, 0.0, math.inf)] * components
    if max_dim >= 1:
        edges = _EdgeRanks(values, max_radius)
        for dim in range(1, max_dim + 1):
            pairs, essential, cleared = _reduce_dimension(edges, dim, cleared)
            points.extend((dim, b, d) for b, d in pairs if d > b)
            points.extend((dim, b, math.inf) for b in essential)

    metadata = {
        "algorithm": ALGORITHM,
        "n_points": distances.n,
        "max_dim": int(max_dim),
        "max_radius": _radius_metadata(max_radius),
    }
    return PersistenceDiagram.from_pairs(points, int(max_dim), metadata)
