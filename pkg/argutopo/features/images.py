"""
Persistence images.

Finite points ``(b, d)`` of one homology dimension are moved to birth-persistence
coordinates ``(b, d - b)``, each is spread by an isotropic Gaussian of bandwidth
`sigma`, scaled by a weight that vanishes on the diagonal, and integrated over the
cells of a regular grid. Cell integrals are exact: the Gaussian factorizes, so each
cell mass is a product of two differences of the normal CDF (error function).

Grid layout: ``pixels[r, c]`` covers persistence row `r` (row 0 is the lowest
persistence band) and birth column `c`.
"""

import json
import os
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np
from scipy.special import erf

from argutopo.common.errors import ImageError
from argutopo.common.files import atomic_write_text
from argutopo.common.global_logging import log_this
from argutopo.tda.diagram import PersistenceDiagram

Extent = Tuple[Tuple[float, float], Tuple[float, float]]
DEFAULT_RESOLUTION = (20, 20)
DEFAULT_SIGMA_FRACTION = 0.05
LINEAR_WEIGHT = "linear: min(max(persistence, 0) / persistence_max, 1)"


@dataclass(frozen=True)
class PersistenceImage:
    """
    Attributes
    ----------
    pixels : np.ndarray
        ``(rows, cols)`` array of non-negative values.
    sigma : float
        Gaussian bandwidth in birth-persistence units.
    extent : ((float, float), (float, float))
        ``((birth_min, birth_max), (persistence_min, persistence_max))``.
    weight : str
        Description of the weighting function.
    dim : int
        Homology dimension the image was built from.
    """
    pixels: np.ndarray
    sigma: float
    extent: Extent
    weight: str
    dim: int

    @property
    def resolution(self) -> Tuple[int, int]:
        return int(self.pixels.shape[0]), int(self.pixels.shape[1])

    def to_csv(self) -> str:
        return "\n".join(",".join(format(float(v), ".17g") for v in row) for row in self.pixels) + "\n"

    def metadata_dict(self) -> Dict:
        (b_lo, b_hi), (p_lo, p_hi) = self.extent
        return {
            "dim": self.dim,
            "resolution": list(self.resolution),
            "sigma": self.sigma,
            "weight": self.weight,
            "extent": {"birth": [b_lo, b_hi], "persistence": [p_lo, p_hi]},
            "layout": "row-major; row 0 = lowest persistence, column 0 = lowest birth",
        }

    def to_dict(self) -> Dict:
        return {**self.metadata_dict(), "pixels": self.pixels.tolist()}

    def write(self, csv_path: Union[str, os.PathLike]) -> None:
        """Write the CSV and its ``.json`` metadata sibling."""
        atomic_write_text(csv_path, self.to_csv())
        meta_path = os.path.splitext(os.fspath(csv_path))[0] + ".json"
        atomic_write_text(meta_path, json.dumps(self.metadata_dict(), indent=2) + "\n")

    def summary(self) -> str:
        return f"PersistenceImage(dim={self.dim}, resolution={self.resolution}, sigma={self.sigma:g})"


def _finite_pairs(diagram: PersistenceDiagram, dim: int) -> np.ndarray:
    pairs = diagram.as_array(dim)
    return pairs[np.isfinite(pairs[:, 1])]


def default_extent(diagram: PersistenceDiagram, dim: int) -> Extent:
    """
    Extent spanning the finite points of `dim`.

    Births span their observed range; persistence spans ``[0, max persistence]``.
    A degenerate birth range (e.g. all births 0 in dimension 0) is widened to half the
    persistence range on each side. Without finite points the unit square is used.
    """
    finite = _finite_pairs(diagram, dim)
    if not len(finite):
        return (0.0, 1.0), (0.0, 1.0)
    births = finite[:, 0]
    p_max = float(np.max(finite[:, 1] - births))
    if p_max <= 0:
        p_max = 1.0
    b_lo, b_hi = min(births), max(births)
    if b_hi - b_lo <= 0:
        b_lo, b_hi = b_lo - p_max / 2, b_hi + p_max / 2
    return (float(b_lo), float(b_hi)), (0.0, float(p_max))


def _cell_masses(edges: np.ndarray, centers: np.ndarray, sigma: float) -> np.ndarray:
    cdf = 0.5 * (1.0 + erf((edges[None, :] - centers[:, None]) / (sigma * np.sqrt(2.0))))
    return np.diff(cdf, axis=1)


@log_this
def persistence_image(
    diagram: PersistenceDiagram,
    dim: int,
    resolution: Tuple[int, int] = DEFAULT_RESOLUTION,
    sigma: Optional[float] = None,
    extent: Optional[Extent] = None,
) -> PersistenceImage:
    """
    Persistence image of the finite points of dimension `dim`.

    Parameters
    ----------
    diagram : PersistenceDiagram
    dim : int
        Homology dimension to rasterize; essential points are ignored.
    resolution : (int, int)
        ``(rows, cols)``, both at least 1.
    sigma : float, optional
        Gaussian bandwidth; defaults to 5% of the extent's persistence range.
    extent : ((float, float), (float, float)), optional
        Birth and persistence ranges; defaults to `default_extent`.

    Returns
    -------
    PersistenceImage
        Pixel ``[r, c]`` is the sum over points of ``weight(p)`` times the Gaussian
        mass of p inside the cell. The weight is linear in persistence: 0 on the
        diagonal, 1 at the extent's persistence maximum and above.

    Raises
    ------
    ImageError
        If `sigma` is not positive, the resolution is below 1x1, or either extent
        range is empty.
    """
    rows, cols = (int(r) for r in resolution)
    if rows < 1 or cols < 1:
        raise ImageError(f"resolution must be at least 1x1, got {resolution}")
    if extent is None:
        extent = default_extent(diagram, dim)
    (b_lo, b_hi), (p_lo, p_hi) = extent
    if not (b_hi > b_lo and p_hi > p_lo):
        raise ImageError(f"empty extent {extent}")
    if sigma is None:
        sigma = DEFAULT_SIGMA_FRACTION * (p_hi - p_lo)
    if not sigma > 0:
        raise ImageError(f"sigma must be positive, got {sigma}")

    finite = _finite_pairs(diagram, dim)
    pixels = np.zeros((rows, cols))
    if len(finite):
        births = finite[:, 0]
        lifetimes = finite[:, 1] - births
        weights = np.clip(lifetimes / p_hi, 0.0, 1.0) if p_hi > 0 else np.zeros_like(lifetimes)
        along_birth = _cell_masses(np.linspace(b_lo, b_hi, cols + 1), births, sigma)
        along_persistence = _cell_masses(np.linspace(p_lo, p_hi, rows + 1), lifetimes, sigma)
        pixels = np.einsum("k,kr,kc->rc", weights, along_persistence, along_birth)
    extent_out = ((float(b_lo), float(b_hi)), (float(p_lo), float(p_hi)))
    return PersistenceImage(pixels, float(sigma), extent_out, LINEAR_WEIGHT, int(dim))
