"""
SVG rendering of persistence diagrams.

Points are drawn at (birth, death) with one marker per homology dimension, next to
the diagonal ``death = birth``. Essential classes cannot be placed at infinity, so
they are drawn on a shaded band above the largest finite value, labelled with the
infinity sign.

The SVG output is reproducible: the hash salt and the date metadata are fixed.
"""

import io
import math
import os
import threading
from typing import Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from argutopo.common.files import atomic_write_bytes  # noqa: E402
from argutopo.common.global_logging import log_this  # noqa: E402
from argutopo.tda.diagram import PersistenceDiagram  # noqa: E402

MARKERS = ("o", "^", "s", "D")
COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red")
BAND_FRACTION = 0.1

# pyplot and rcParams are process-global
_PLOT_LOCK = threading.Lock()


def _axis_limit(diagram: PersistenceDiagram) -> float:
    finite = [v for p in diagram for v in (p.birth, p.death) if not math.isinf(v)]
    top = max(finite, default=0.0)
    return top if top > 0 else 1.0


@log_this
def emit_plot(diagram: PersistenceDiagram, path: Union[str, os.PathLike], title: str = "") -> None:
    """
    Write `diagram` as a self-contained SVG file.

    An empty diagram produces the axes over ``[0, 1]`` and the diagonal only.

    Raises
    ------
    OSError
        If `path` cannot be written.
    """
    limit = _axis_limit(diagram)
    band = BAND_FRACTION * limit
    infinity_y = limit + band

    with _PLOT_LOCK, plt.rc_context({"svg.hashsalt": "argutopo", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(5, 5))
        try:
            ax.plot([0, infinity_y + band], [0, infinity_y + band], color="grey", linewidth=0.8, zorder=1)
            if any(p.is_essential for p in diagram):
                ax.axhspan(limit + band / 2, infinity_y + band / 2, color="0.92", zorder=0)
                ax.text(0, infinity_y, "∞", va="center", ha="right", fontsize=11)
            for dim in range(diagram.max_dim + 1):
                points = diagram.in_dimension(dim)
                if not points:
                    continue
                births = [p.birth for p in points]
                deaths = [infinity_y if p.is_essential else p.death for p in points]
                ax.scatter(
                    births,
                    deaths,
                    marker=MARKERS[dim % len(MARKERS)],
                    color=COLORS[dim % len(COLORS)],
                    s=24,
                    label=f"H{dim}",
                    zorder=2,
                )
            ax.set_xlim(-band / 2, infinity_y + band)
            ax.set_ylim(-band / 2, infinity_y + band)
            ax.set_xlabel("birth")
            ax.set_ylabel("death")
            if title:
                ax.set_title(title)
            if len(diagram):
                ax.legend(loc="lower right")
            buffer = io.BytesIO()
            fig.savefig(buffer, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    atomic_write_bytes(path, buffer.getvalue())
