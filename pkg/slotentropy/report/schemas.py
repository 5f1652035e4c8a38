"""
Pydantic schemas for the JSON result files.
"""

from typing import Optional

from pydantic import BaseModel, Field


# ============ Stats Schemas ============

class ModelSummary(BaseModel):
    """Fitted random-intercept model."""
    beta: dict[str, float]
    se: dict[str, float]
    t: dict[str, float]
    p: dict[str, float]
    sigma_u2: float
    sigma_e2: float
    loglik: float
    n_obs: int
    n_groups: int


class LrtSummary(BaseModel):
    """Likelihood-ratio test between nested fits."""
    chi2: float
    df: int
    p: float


class PermutationSummary(BaseModel):
    """Within-participle permutation test of one contrast."""
    contrast: list[str]
    statistic: float
    p: float
    n_groups: int
    n_perm: int


class ConstructionSummary(BaseModel):
    """Descriptive entropy statistics for one construction."""
    n: int
    mean: float
    sd: Optional[float] = None
    min: float
    max: float


class StatsReport(BaseModel):
    """Contents of stats.json."""
    model: Optional[ModelSummary] = None
    reduced_model: Optional[ModelSummary] = None
    lrt_construction: Optional[LrtSummary] = None
    lrt_phrasal_only: Optional[LrtSummary] = None
    permutation: dict[str, PermutationSummary] = {}
    summary: dict[str, ConstructionSummary] = {}
    n_participles: int = 0
    skipped_reason: Optional[str] = Field(default=None, description="Why model fitting was skipped")


# ============ Run Manifest Schemas ============

class FileCounters(BaseModel):
    """Ingest counters for one corpus file."""
    path: str
    sentences: int = 0
    malformed: int = 0
    invalid: int = 0
    duplicates: int = 0


class CellAccounting(BaseModel):
    """Span accounting for one (participle, construction) cell."""
    participle: str
    construction: str
    raw: int = 0
    parsed_valid: int = 0
    rejected_by_filter: int = 0
    rejected_by_dependency: int = 0
    capped: int = Field(default=0, description="Spans beyond the raw cap, not resolved")
    sampled: int = 0


class RunManifest(BaseModel):
    """Contents of run-manifest.json; no timestamps so reruns are byte-identical."""
    version: str
    seed: int
    config: dict
    files: list[FileCounters] = []
    candidate_participles: list[str] = []
    cells: list[CellAccounting] = []
    included_participles: list[str] = []
    exclusions: dict[str, list[str]] = {}
    outputs: list[str] = []
