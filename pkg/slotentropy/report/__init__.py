"""
Report package.
Result schemas, tables and figures.
"""

from slotentropy.report.figures import construction_figure, participle_figure, save_figure
from slotentropy.report.schemas import CellAccounting, FileCounters, RunManifest, StatsReport
from slotentropy.report.tables import (
    emit_fig1_data,
    emit_fig2_data,
    entropy_frame,
    matches_frame,
    preposition_counts,
    read_cell_counts,
    read_entropy,
    read_matches,
    write_cell_counts,
    write_entropy,
    write_json,
    write_matches,
    write_table,
)

__all__ = [
    "CellAccounting",
    "FileCounters",
    "RunManifest",
    "StatsReport",
    "construction_figure",
    "emit_fig1_data",
    "emit_fig2_data",
    "entropy_frame",
    "matches_frame",
    "participle_figure",
    "preposition_counts",
    "read_cell_counts",
    "read_entropy",
    "read_matches",
    "save_figure",
    "write_cell_counts",
    "write_entropy",
    "write_json",
    "write_matches",
    "write_table",
]
