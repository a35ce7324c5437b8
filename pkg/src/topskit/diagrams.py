"""Number-line diagrams of systems, regions, and witnesses as SVG files.

Each vertex gets one horizontal axis showing its component hull (black bar),
the images of its outgoing edges (colored bars labeled by edge number), and
optionally a region (red, with degenerate single points drawn as dots), a
highlighted interval, and a witness point.  All positions are decimal
approximations of the exact values; the figure carries a precision note.
Rendering is deterministic: fixed hash salt, no timestamps.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from matplotlib import rc_context
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from .exactnum import ExactReal
from .gifs import GraphIFS, IntervalSet

__all__ = ["system_figure", "save_svg", "render_svg_bytes"]

_PRECISION = Fraction(1, 10**12)
_PRECISION_NOTE = "positions approximated to 1e-12"
_HASH_SALT = "topskit"


def _flt(x: ExactReal) -> float:
    return float(x.approximate(_PRECISION))


def system_figure(
    g: GraphIFS,
    *,
    region: Optional[dict[str, IntervalSet]] = None,
    region_label: str = "region",
    highlight: Optional[tuple[str, tuple]] = None,
    highlight_label: str = "overlap",
    witness: Optional[tuple[str, ExactReal]] = None,
    title: Optional[str] = None,
) -> Figure:
    """One number-line axes per vertex.

    ``region`` maps vertices to interval sets drawn in red below the hull;
    ``highlight`` is a (vertex, (lo, hi)) pair shaded across that vertex's
    axis; ``witness`` is a (vertex, point) pair marked with a cross.
    """
    vertices = list(g.vertices)
    hulls = g.component_hulls()
    fig = Figure(figsize=(8.0, 1.7 * len(vertices) + 0.7))
    FigureCanvasSVG(fig)
    axes = fig.subplots(nrows=len(vertices), ncols=1, squeeze=False)

    for row, v in enumerate(vertices):
        ax = axes[row][0]
        lo, hi = (_flt(e) for e in hulls[v])
        pad = 0.06 * max(hi - lo, 1.0)
        ax.set_xlim(lo - pad, hi + pad)
        ax.hlines(0.0, lo, hi, color="black", linewidth=6.0, zorder=2)

        labels = g.out_labels(v)
        for i, k in enumerate(labels):
            a, b = (_flt(e) for e in g.image_interval(k))
            y = 0.6 + 0.5 * i
            ax.hlines(y, a, b, color=f"C{(k - 1) % 10}", linewidth=4.0, zorder=3)
            ax.annotate(
                str(k),
                ((a + b) / 2.0, y),
                xytext=(0, 3),
                textcoords="offset points",
                ha="center",
                va="bottom",
                fontsize=8,
            )
        top = 0.6 + 0.5 * len(labels)

        if region is not None and v in region:
            for a_ex, b_ex in region[v]:
                a, b = _flt(a_ex), _flt(b_ex)
                if a == b:
                    ax.plot(
                        [a], [-0.6], marker="o", color="red", markersize=5, zorder=4
                    )
                else:
                    ax.hlines(-0.6, a, b, color="red", linewidth=5.0, zorder=4)
            if not region[v].is_empty:
                ax.annotate(
                    region_label,
                    (ax.get_xlim()[0], -0.6),
                    xytext=(4, 0),
                    textcoords="offset points",
                    ha="left",
                    va="center",
                    fontsize=7,
                    color="red",
                )

        if highlight is not None and highlight[0] == v:
            a, b = (_flt(e) for e in highlight[1])
            ax.axvspan(a, b, color="orange", alpha=0.3, zorder=1)
            ax.annotate(
                highlight_label,
                ((a + b) / 2.0, top),
                ha="center",
                va="bottom",
                fontsize=7,
                color="darkorange",
            )

        if witness is not None and witness[0] == v:
            ax.plot(
                [_flt(witness[1])],
                [0.0],
                marker="x",
                color="red",
                markersize=9,
                markeredgewidth=2.0,
                zorder=5,
            )

        ax.set_ylim(-1.1, top + 0.6)
        ax.set_yticks([])
        ax.set_title(v, loc="left", fontsize=9)
        for side in ("left", "right", "top"):
            ax.spines[side].set_visible(False)

    if title:
        fig.suptitle(title, fontsize=10)
    fig.text(0.99, 0.01, _PRECISION_NOTE, fontsize=6, color="gray", ha="right")
    fig.tight_layout(rect=(0.0, 0.03, 1.0, 0.95 if title else 1.0))
    return fig


def save_svg(fig: Figure, path: str) -> None:
    """Write the figure as deterministic SVG (no timestamp, fixed salt)."""
    with rc_context({"svg.hashsalt": _HASH_SALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})


def render_svg_bytes(fig: Figure) -> bytes:
    """The figure as deterministic SVG bytes."""
    import io

    buf = io.BytesIO()
    with rc_context({"svg.hashsalt": _HASH_SALT}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()
