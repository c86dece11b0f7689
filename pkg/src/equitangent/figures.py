"""Matplotlib renderings written next to the delimited outputs."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .geom import Point

_RC = {
    "figure.figsize": (6.0, 6.0),
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
}


def save_figure(
    path: str,
    curves: list[tuple[list[Point], dict]],
    points: list[tuple[list[Point], dict]] | None = None,
    title: str = "",
    equal_aspect: bool = True,
) -> None:
    """Plot polylines and point sets to a PNG file.

    curves entries are (points, plot kwargs); points entries likewise
    for scatter.  Output is deterministic for fixed inputs.
    """
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        for pts, style in curves:
            ax.plot([p.x for p in pts], [p.y for p in pts], **style)
        for pts, style in points or []:
            ax.scatter([p.x for p in pts], [p.y for p in pts], **style)
        if equal_aspect:
            ax.set_aspect("equal")
        if title:
            ax.set_title(title)
        handles, labels = ax.get_legend_handles_labels()
        if labels:
            ax.legend(loc="upper right")
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
