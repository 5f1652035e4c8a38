"""
Result tables.
Reads and writes the tab/comma separated artifacts of each pipeline stage.
"""

import csv
from pathlib import Path
from typing import Iterable, Optional, Sequence

import pandas as pd
from loguru import logger
from pydantic import BaseModel

from slotentropy.entropy.measures import EntropyRecord, max_entropy
from slotentropy.errors import InputError
from slotentropy.extractors.base import KIND_ORDER, ConstructionKind, ConstructionMatch
from slotentropy.report.schemas import CellAccounting


EMPTY = "_"
FLOAT_FORMAT = "%.6f"

MATCH_COLUMNS = [
    "kind",
    "participle_lemma",
    "alpha_form",
    "alpha_lemma",
    "head_noun_lemma",
    "preposition",
    "sentence_id",
    "participle_index",
    "alpha_index",
]
ENTROPY_COLUMNS = ["participle", "construction", "n", "entropy_bits"]
FIGURE_COLUMNS = ["construction", "participle", "entropy_bits", "max_entropy"]
FIG2_COLUMNS = ["participle", "construction", "entropy_bits", "max_entropy"]
CELL_COLUMNS = list(CellAccounting.model_fields)
PREPOSITION_COLUMNS = ["participle", "construction", "preposition", "count"]

_KIND_RANK = {kind.value: rank for rank, kind in enumerate(KIND_ORDER)}
_COMPOUND_LEVELS = (ConstructionKind.HYPHENATED.value, ConstructionKind.NVN.value)


def _kind_rank(column: pd.Series) -> pd.Series:
    return column.map(_KIND_RANK) if column.name == "construction" else column


def _write(frame: pd.DataFrame, path: Path, sep: str = ",") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(
        path,
        sep=sep,
        index=False,
        lineterminator="\n",
        float_format=FLOAT_FORMAT,
        quoting=csv.QUOTE_NONE if sep == "\t" else csv.QUOTE_MINIMAL,
        escapechar="\\" if sep == "\t" else None,
    )
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path


def _read(path: Path, columns: Sequence[str], sep: str = ",") -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        raise InputError(f"{path}: file not found (run the previous stage first)")
    frame = pd.read_csv(
        path,
        sep=sep,
        dtype=str,
        keep_default_na=False,
        quoting=csv.QUOTE_NONE if sep == "\t" else csv.QUOTE_MINIMAL,
    )
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise InputError(f"{path}: missing column(s) {missing}")
    return frame


def write_json(model: BaseModel, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


# ============ Matches ============

def matches_frame(matches: Iterable[ConstructionMatch]) -> pd.DataFrame:
    def cell(value) -> str:
        return EMPTY if value is None else str(value)

    rows = [
        [
            m.kind.value,
            m.participle_lemma,
            m.alpha_form,
            m.alpha_lemma,
            cell(m.head_noun_lemma),
            cell(m.preposition),
            m.sentence_id,
            str(m.participle_index),
            cell(m.alpha_index),
        ]
        for m in matches
    ]
    return pd.DataFrame(rows, columns=MATCH_COLUMNS, dtype=object)


def write_matches(matches: Iterable[ConstructionMatch], path: Path) -> Path:
    return _write(matches_frame(matches), path, sep="\t")


def read_matches(path: Path) -> list[ConstructionMatch]:
    frame = _read(path, MATCH_COLUMNS, sep="\t")

    def value(text: str) -> Optional[str]:
        return None if text == EMPTY else text

    return [
        ConstructionMatch(
            kind=ConstructionKind(row.kind),
            participle_lemma=row.participle_lemma,
            alpha_lemma=row.alpha_lemma,
            alpha_form=row.alpha_form,
            head_noun_lemma=value(row.head_noun_lemma),
            preposition=value(row.preposition),
            sentence_id=row.sentence_id,
            participle_index=int(row.participle_index),
            alpha_index=None if row.alpha_index == EMPTY else int(row.alpha_index),
        )
        for row in frame.itertuples(index=False)
    ]


def preposition_counts(matches: Iterable[ConstructionMatch]) -> pd.DataFrame:
    """Per-preposition breakdown of valid phrasal matches."""
    rows = [(m.participle_lemma, m.kind.value, m.preposition.lower()) for m in matches if m.preposition is not None]
    frame = pd.DataFrame(rows, columns=PREPOSITION_COLUMNS[:3])
    if frame.empty:
        return pd.DataFrame(columns=PREPOSITION_COLUMNS)
    counts = frame.groupby(PREPOSITION_COLUMNS[:3], sort=False).size().reset_index(name="count")
    return counts.sort_values(["participle", "construction", "preposition"], key=_kind_rank).reset_index(drop=True)


# ============ Cell Accounting ============

def write_cell_counts(cells: Iterable[CellAccounting], path: Path) -> Path:
    frame = pd.DataFrame([c.model_dump() for c in cells], columns=CELL_COLUMNS)
    return _write(frame, path)


def read_cell_counts(path: Path) -> list[CellAccounting]:
    frame = _read(path, CELL_COLUMNS)
    return [CellAccounting(**row) for row in frame.to_dict(orient="records")]


# ============ Entropy ============

def entropy_frame(records: Iterable[EntropyRecord]) -> pd.DataFrame:
    """entropy.csv layout, ordered by participle then construction."""
    frame = pd.DataFrame(
        [(r.participle, ConstructionKind(r.kind).value, r.n, r.entropy_bits) for r in records],
        columns=ENTROPY_COLUMNS,
    )
    return frame.sort_values(["participle", "construction"], key=_kind_rank).reset_index(drop=True)


def write_entropy(records: Iterable[EntropyRecord], path: Path) -> Path:
    return _write(entropy_frame(records), path)


def read_entropy(path: Path) -> list[EntropyRecord]:
    frame = _read(path, ENTROPY_COLUMNS)
    return [
        EntropyRecord(
            participle=row.participle,
            kind=ConstructionKind(row.construction),
            n=int(row.n),
            entropy_bits=float(row.entropy_bits),
        )
        for row in frame.itertuples(index=False)
    ]


# ============ Figure Data ============

def _figure_base(records: Sequence[EntropyRecord]) -> pd.DataFrame:
    frame = pd.DataFrame(
        [
            (ConstructionKind(r.kind).value, r.participle, r.entropy_bits, max_entropy(r.n))
            for r in records
        ],
        columns=FIGURE_COLUMNS,
    )
    return frame


def emit_fig1_data(records: Iterable[EntropyRecord]) -> pd.DataFrame:
    """Entropy per participle, grouped by construction (baseline first)."""
    frame = _figure_base(list(records))
    return frame.sort_values(["construction", "participle"], key=_kind_rank).reset_index(drop=True)


def emit_fig2_data(records: Iterable[EntropyRecord]) -> pd.DataFrame:
    """
    Entropy per construction, grouped by participle.

    Participles are ordered by mean compound (hyphenated, NVN) entropy
    ascending, ties broken by participle.
    """
    frame = _figure_base(list(records))[FIG2_COLUMNS]
    if frame.empty:
        return frame
    compound = frame[frame["construction"].isin(_COMPOUND_LEVELS)].groupby("participle")["entropy_bits"].mean()
    order = (
        pd.DataFrame({"participle": sorted(frame["participle"].unique())})
        .assign(compound_mean=lambda d: d["participle"].map(compound).fillna(float("inf")))
        .sort_values(["compound_mean", "participle"], kind="mergesort")["participle"]
        .tolist()
    )
    rank = {participle: i for i, participle in enumerate(order)}
    frame = frame.assign(
        _participle_rank=frame["participle"].map(rank),
        _kind_rank=frame["construction"].map(_KIND_RANK),
    )
    return frame.sort_values(["_participle_rank", "_kind_rank"]).drop(columns=["_participle_rank", "_kind_rank"]).reset_index(
        drop=True
    )


def write_table(frame: pd.DataFrame, path: Path) -> Path:
    return _write(frame, path)
