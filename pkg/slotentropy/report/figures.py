"""
Figure rendering.
Strip charts of slot entropy from the fig1/fig2 tables.
"""

from pathlib import Path

import pandas as pd
import plotly.graph_objects as go

from slotentropy.extractors.base import ConstructionKind


def _display(construction: str) -> str:
    return ConstructionKind(construction).display_name


def _strip_chart(frame: pd.DataFrame, x: str, series: str, title: str) -> go.Figure:
    """One marker trace per value of the series column, max entropy as a dashed line."""
    fig = go.Figure()
    for name, group in frame.groupby(series, sort=False):
        fig.add_trace(
            go.Scatter(
                x=group[x],
                y=group["entropy_bits"],
                mode="markers",
                name=str(name),
                marker=dict(size=9, opacity=0.8),
            )
        )
    if not frame.empty:
        ceiling = float(frame["max_entropy"].max())
        fig.add_hline(y=ceiling, line_dash="dash", annotation_text=f"max entropy {ceiling:.2f}")
    fig.update_layout(title=title, yaxis_title="Entropy (bits)", template="plotly_white")
    return fig


def construction_figure(fig1: pd.DataFrame) -> go.Figure:
    frame = fig1.assign(construction=fig1["construction"].map(_display))
    return _strip_chart(frame, x="construction", series="participle", title="Slot entropy by construction")


def participle_figure(fig2: pd.DataFrame) -> go.Figure:
    frame = fig2.assign(construction=fig2["construction"].map(_display))
    return _strip_chart(frame, x="participle", series="construction", title="Slot entropy by participle")


def save_figure(fig: go.Figure, path: Path) -> list[Path]:
    """
    Write the figure as interactive HTML and static SVG.

    Returns:
        Paths written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    html = path.with_suffix(".html")
    fig.write_html(html, include_plotlyjs="cdn", full_html=True, div_id=path.stem)
    svg = path.with_suffix(".svg")
    fig.write_image(svg, format="svg")
    return [html, svg]
