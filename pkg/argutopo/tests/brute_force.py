"""
Reference persistence computation for small point clouds.

Enumerates every simplex of the full Rips complex up to dimension ``max_dim + 1``,
sorts them by (diameter, dimension, lexicographic vertices) and runs the textbook
column reduction of the complete Z/2 boundary matrix. Slow and simple on purpose.
"""

import itertools
import math
from typing import List, Tuple

import numpy as np


def brute_force_diagram(distances: np.ndarray, max_dim: int) -> List[Tuple[int, float, float]]:
    """Sorted ``(dim, birth, death)`` triples with zero-persistence pairs removed."""
    n = distances.shape[0]
    simplices = []
    for k in range(1, min(n, max_dim + 2) + 1):
        for vertices in itertools.combinations(range(n), k):
            diameter = max((distances[a, b] for a, b in itertools.combinations(vertices, 2)), default=0.0)
            simplices.append((float(diameter), k - 1, vertices))
    simplices.sort()
    position = {s[2]: i for i, s in enumerate(simplices)}

    columns = []
    for _, dim, vertices in simplices:
        if dim == 0:
            columns.append(set())
        else:
            columns.append({position[face] for face in itertools.combinations(vertices, dim)})

    low_owner = {}
    paired = set()
    triples = []
    for j, column in enumerate(columns):
        while column:
            low = max(column)
            if low not in low_owner:
                break
            column ^= columns[low_owner[low]]
        if column:
            low = max(column)
            low_owner[low] = j
            paired.update((low, j))
            birth, dim, _ = simplices[low]
            death = simplices[j][0]
            if death > birth:
                triples.append((dim, birth, death))

    for i, (birth, dim, _) in enumerate(simplices):
        if i not in paired and dim <= max_dim:
            triples.append((dim, birth, math.inf))
    return sorted(triples)
