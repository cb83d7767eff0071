import json

import numpy as np
import pytest

from argutopo.common.errors import ImageError
from argutopo.features.images import default_extent, persistence_image
from argutopo.tda.diagram import PersistenceDiagram

UNIT = ((0.0, 1.0), (0.0, 1.0))


def diagram(*pairs, dim=1):
    return PersistenceDiagram.from_pairs([(dim, b, d) for b, d in pairs], max_dim=1)


def test_empty_diagram_gives_zero_image():
    image = persistence_image(PersistenceDiagram((), 1), 1, (5, 4), sigma=0.1, extent=UNIT)
    assert image.resolution == (5, 4)
    assert not image.pixels.any()
    assert not persistence_image(PersistenceDiagram((), 1), 1).pixels.any()


def test_diagonal_point_has_no_weight():
    image = persistence_image(diagram((0.5, 0.5)), 1, (10, 10), sigma=0.05, extent=UNIT)
    assert not image.pixels.any()


def test_essential_points_are_ignored():
    image = persistence_image(diagram((0.2, float("inf"))), 1, (10, 10), sigma=0.05, extent=UNIT)
    assert not image.pixels.any()


def test_narrow_gaussian_lands_in_one_pixel():
    image = persistence_image(diagram((0.55, 1.2)), 1, (10, 10), sigma=1e-3, extent=UNIT)
    weight = 0.65
    assert image.pixels.sum() == pytest.approx(weight, abs=1e-6)
    assert image.pixels[6, 5] == pytest.approx(weight, abs=1e-6)


def test_low_persistence_lands_in_row_zero():
    image = persistence_image(diagram((0.35, 0.4)), 1, (10, 10), sigma=0.01, extent=UNIT)
    assert np.unravel_index(image.pixels.argmax(), image.pixels.shape) == (0, 3)


def test_additivity():
    a = diagram((0.1, 0.5), (0.3, 0.9))
    b = diagram((0.6, 0.8))
    both = diagram((0.1, 0.5), (0.3, 0.9), (0.6, 0.8))
    args = ((8, 6), 0.07, UNIT)
    total = persistence_image(a, 1, *args).pixels + persistence_image(b, 1, *args).pixels
    assert np.allclose(persistence_image(both, 1, *args).pixels, total, atol=1e-9)


def test_total_mass_with_wide_margin():
    points = diagram((0.3, 0.6), (0.5, 0.9), (0.4, 0.55))
    image = persistence_image(points, 1, (40, 40), sigma=0.02, extent=((0.0, 1.0), (0.0, 1.0)))
    weights = [0.3, 0.4, 0.15]
    assert image.pixels.sum() == pytest.approx(sum(weights), abs=1e-4)
    assert (image.pixels >= 0).all()


def test_invalid_parameters():
    points = diagram((0.1, 0.5))
    with pytest.raises(ImageError):
        persistence_image(points, 1, sigma=0.0, extent=UNIT)
    with pytest.raises(ImageError):
        persistence_image(points, 1, sigma=0.1, extent=((0.0, 0.0), (0.0, 1.0)))
    with pytest.raises(ImageError):
        persistence_image(points, 1, resolution=(0, 3))


def test_default_extent_and_sigma():
    points = diagram((0.25, 0.75), (0.5, 1.5))
    assert default_extent(points, 1) == ((0.25, 0.5), (0.0, 1.0))
    image = persistence_image(points, 1)
    assert image.sigma == pytest.approx(0.05)
    assert image.resolution == (20, 20)


def test_default_extent_of_degenerate_births():
    h0 = PersistenceDiagram.from_pairs([(0, 0.0, 1.0), (0, 0.0, 2.0)], max_dim=0)
    assert default_extent(h0, 0) == ((-1.0, 1.0), (0.0, 2.0))


def test_write_csv_and_metadata(tmp_path):
    image = persistence_image(diagram((0.1, 0.5)), 1, (3, 2), sigma=0.1, extent=UNIT)
    image.write(tmp_path / "h1.csv")
    rows = (tmp_path / "h1.csv").read_text().splitlines()
    assert len(rows) == 3
    assert all(len(row.split(",")) == 2 for row in rows)
    meta = json.loads((tmp_path / "h1.json").read_text())
    assert meta["sigma"] == 0.1
    assert meta["extent"] == {"birth": [0.0, 1.0], "persistence": [0.0, 1.0]}
