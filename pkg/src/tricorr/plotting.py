"""Matplotlib rendering of sweep records for the report path.

Figures are built on explicit ``Figure`` objects (no pyplot state), so
rendering works headless and leaves no global configuration behind.
Saved SVGs keep legend labels as real text elements.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Sequence

from matplotlib.figure import Figure

from .sweep import CorrelationRecord, plottable_columns, record_value


def build_chart(records: Sequence[CorrelationRecord],
                quantities: Sequence[str]) -> Figure:
    """Line chart of the requested quantities versus omega*t."""
    if not records:
        raise ValueError("no records to plot")
    if not quantities:
        raise ValueError("no quantities requested")
    unknown = [q for q in quantities if q not in plottable_columns()]
    if unknown:
        raise ValueError(f"unknown quantities: {unknown}")

    x = [r.omega_t for r in records]
    fig = Figure(figsize=(7.0, 4.2))
    ax = fig.add_subplot(111)
    for name in quantities:
        ax.plot(x, [record_value(r, name) for r in records], label=name, linewidth=1.2)
    ax.set_xlim(x[0], x[-1])
    ax.set_xlabel("omega_t")
    ax.legend(loc="best", frameon=False)
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    return fig


@contextmanager
def _svg_text_as_text():
    import matplotlib
    old = matplotlib.rcParams["svg.fonttype"]
    matplotlib.rcParams["svg.fonttype"] = "none"
    try:
        yield
    finally:
        matplotlib.rcParams["svg.fonttype"] = old


def save_chart_svg(fig: Figure, path) -> None:
    """Write the chart as SVG with searchable text labels."""
    with _svg_text_as_text():
        fig.savefig(path, format="svg")
