"""Line plots of evaluated curves, written as SVG or PNG.

Output is reproducible: the SVG id salt is fixed and date metadata is dropped.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_FORMATS = {".svg": "svg", ".png": "png"}


def plot_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix not in _FORMATS:
        raise ValueError(f"plot path must end in .svg or .png, got {str(path)!r}")
    return _FORMATS[suffix]


def line_plot(
    x: np.ndarray,
    curves: Mapping[str, np.ndarray],
    path: str | Path,
    title: str = "",
    xlabel: str = "x",
    ylabel: str = "",
) -> Path:
    """Draw one polyline per entry of ``curves`` against ``x`` and save to ``path``."""
    fmt = plot_format(path)
    with plt.rc_context({"svg.hashsalt": "hyperradon", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.0))
        try:
            for label, y in curves.items():
                ax.plot(x, np.asarray(y, dtype=float), lw=1.0, label=label)
            ax.axhline(0.0, color="0.6", lw=0.5)
            ax.set_xlabel(xlabel)
            ax.set_ylabel(ylabel)
            if title:
                ax.set_title(title)
            if len(curves) > 1:
                ax.legend(frameon=False)
            fig.tight_layout()
            meta = {"Date": None} if fmt == "svg" else {"Software": None}
            fig.savefig(path, format=fmt, metadata=meta, dpi=120)
        finally:
            plt.close(fig)
    return Path(path)
