"""Result emission: delimited learning curves and companion figures.

The CSV is the canonical artifact (stable layout, 6 significant digits,
deterministic bytes for a fixed seed); the PNG figures are rendered from
the same curves for quick visual inspection.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import InvalidInputError
from .harness import LearningCurve

__all__ = ["write_curves_csv", "render_figures"]

_ARM_COLUMNS = ("mse_db", "mse_re_db", "mse_im_db", "dict_size_mean")


def _common_length(curves: dict) -> int:
    if not curves:
        raise InvalidInputError("no curves to write")
    lengths = {len(c) for c in curves.values()}
    if len(lengths) != 1:
        raise InvalidInputError(f"curves disagree on length: {sorted(lengths)}")
    return lengths.pop()


def write_curves_csv(path, curves: dict) -> Path:
    """Write arm curves as one CSV: sample_index, then 4 columns per arm."""
    n = _common_length(curves)
    header = ["sample_index"]
    columns = []
    for name, curve in curves.items():
        if not isinstance(curve, LearningCurve):
            raise InvalidInputError(f"curve {name!r} is not a LearningCurve")
        for col in _ARM_COLUMNS:
            header.append(f"{name}_{col}")
            columns.append(np.asarray(getattr(curve, col), dtype=float))
    lines = [",".join(header)]
    for i in range(n):
        row = [str(i)]
        row.extend(format(col[i], ".6g") for col in columns)
        lines.append(",".join(row))
    out = Path(path)
    out.write_text("\n".join(lines) + "\n")
    return out


def render_figures(directory, stem: str, curves: dict, title: str | None = None) -> list:
    """Render learning-curve figures next to the CSV; returns written paths.

    ``<stem>.png`` shows the combined MSE per arm; ``<stem>_components.png``
    splits real and imaginary error components.
    """
    n = _common_length(curves)
    directory = Path(directory)
    x = np.arange(n)
    written = []

    fig, ax = plt.subplots(figsize=(8.0, 5.0))
    for name, curve in curves.items():
        ax.plot(x, curve.mse_db, label=name, linewidth=1.2)
    ax.set_xlabel("sample")
    ax.set_ylabel("MSE (dB)")
    ax.grid(True, alpha=0.4)
    ax.legend()
    if title:
        ax.set_title(title)
    combined = directory / f"{stem}.png"
    fig.savefig(combined, dpi=110, bbox_inches="tight")
    plt.close(fig)
    written.append(combined)

    fig, axes = plt.subplots(1, 2, figsize=(11.0, 4.2), sharex=True)
    for ax, series, label in (
        (axes[0], "mse_re_db", "real part"),
        (axes[1], "mse_im_db", "imaginary part"),
    ):
        for name, curve in curves.items():
            ax.plot(x, getattr(curve, series), label=name, linewidth=1.2)
        ax.set_xlabel("sample")
        ax.set_ylabel(f"MSE, {label} (dB)")
        ax.grid(True, alpha=0.4)
    axes[0].legend()
    if title:
        fig.suptitle(title)
    components = directory / f"{stem}_components.png"
    fig.savefig(components, dpi=110, bbox_inches="tight")
    plt.close(fig)
    written.append(components)
    return written
