"""
Random-intercept linear mixed model.

Fits entropy ~ construction + (1 | participle) by maximum likelihood.
Given the variance ratio lam = sigma_u2 / sigma_e2, beta and sigma_e2 have
closed forms (GLS with the block-diagonal inverse of a one-factor random
intercept covariance), so only lam is searched numerically.
"""

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger
from scipy import linalg
from scipy.stats import norm

from slotentropy.errors import DesignError, InputError
from slotentropy.extractors.base import KIND_ORDER, ConstructionKind


DEFAULT_LEVELS = tuple(kind.value for kind in KIND_ORDER)
INTERCEPT = "intercept"

# Search interval and tolerance on log(lam)
LOG_LAMBDA_BOUNDS = (-18.0, 18.0)
SEARCH_TOLERANCE = 1e-10
GRID_POINTS = 64
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# Smallest residual variance, relative to the mean squared response
RESIDUAL_VARIANCE_FLOOR = 1e-12


@dataclass(frozen=True, slots=True)
class LongRow:
    """One (participle, construction) entropy observation."""

    participle: str
    construction: str
    entropy_bits: float


@dataclass(frozen=True)
class LmmFit:
    names: tuple[str, ...]
    beta: np.ndarray
    se: np.ndarray
    t: np.ndarray
    p: np.ndarray
    sigma_u2: float
    sigma_e2: float
    loglik: float
    lam: float
    n_obs: int
    n_groups: int
    levels: tuple[str, ...] = field(default=DEFAULT_LEVELS)

    def coefficient(self, name: str) -> float:
        return float(self.beta[self.names.index(name)])

    def to_dict(self) -> dict:
        return {
            "beta": dict(zip(self.names, map(float, self.beta))),
            "se": dict(zip(self.names, map(float, self.se))),
            "t": dict(zip(self.names, map(float, self.t))),
            "p": dict(zip(self.names, map(float, self.p))),
            "sigma_u2": self.sigma_u2,
            "sigma_e2": self.sigma_e2,
            "loglik": self.loglik,
            "n_obs": self.n_obs,
            "n_groups": self.n_groups,
        }


def rows_to_frame(rows: Iterable[LongRow]) -> pd.DataFrame:
    frame = pd.DataFrame(
        [(r.participle, ConstructionKind(r.construction).value, float(r.entropy_bits)) for r in rows],
        columns=["participle", "construction", "entropy_bits"],
    )
    return frame


class _Design:
    """Response, fixed-effect design and grouping for one model."""

    def __init__(self, rows: Sequence[LongRow], include_construction: bool, levels: tuple[str, ...]):
        frame = rows_to_frame(rows)
        if frame.empty:
            raise InputError("no rows to fit")

        unknown = sorted(set(frame["construction"]) - set(levels))
        if unknown:
            raise DesignError(f"rows carry construction levels outside {list(levels)}: {unknown}")
        absent = [level for level in levels if level not in set(frame["construction"])]
        if absent:
            raise DesignError(f"singular design: level(s) {absent} absent from all rows")

        codes, groups = pd.factorize(frame["participle"], sort=True)
        if len(groups) < 2:
            raise InputError(f"need at least 2 participle groups, got {len(groups)}")
        self.n_g = np.bincount(codes).astype(float)
        if include_construction and (self.n_g < 2).any():
            raise InputError("every participle needs at least 2 rows when construction is a predictor")

        self.y = frame["entropy_bits"].to_numpy(dtype=float)
        self.names: tuple[str, ...] = (INTERCEPT,)
        columns = [np.ones(len(frame))]
        if include_construction:
            dummies = pd.get_dummies(
                pd.Categorical(frame["construction"], categories=list(levels)), drop_first=True, dtype=float
            )
            columns.extend(dummies[level].to_numpy() for level in dummies.columns)
            self.names += tuple(str(level) for level in dummies.columns)
        self.X = np.column_stack(columns)

        self.Z = np.zeros((len(frame), len(groups)))
        self.Z[np.arange(len(frame)), codes] = 1.0
        self.n_obs = len(frame)
        self.n_groups = len(groups)

        # Sufficient statistics reused at every lam
        self.XtX = self.X.T @ self.X
        self.Xty = self.X.T @ self.y
        self.S = self.Z.T @ self.X
        self.ys = self.Z.T @ self.y
        self.sigma_e2_floor = RESIDUAL_VARIANCE_FLOOR * max(float(np.mean(self.y**2)), 1.0)

    def profile(self, lam: float) -> tuple[float, np.ndarray, float, tuple]:
        """Profiled log-likelihood, beta, sigma_e2 and the Cholesky factor at lam."""
        c = lam / (1.0 + lam * self.n_g)
        XtWX = self.XtX - self.S.T @ (c[:, None] * self.S)
        XtWy = self.Xty - self.S.T @ (c * self.ys)
        try:
            factor = linalg.cho_factor(XtWX)
        except linalg.LinAlgError as e:
            raise DesignError(f"fixed-effect design is singular: {e}") from None
        beta = linalg.cho_solve(factor, XtWy)

        r = self.y - self.X @ beta
        rs = self.Z.T @ r
        q = float(r @ r - np.sum(c * rs**2))
        n = self.n_obs
        # An exact fit leaves q at roundoff level
        sigma_e2 = max(q / n, self.sigma_e2_floor)
        loglik = -0.5 * n * (math.log(2.0 * math.pi) + 1.0 + math.log(sigma_e2)) - 0.5 * float(
            np.sum(np.log1p(lam * self.n_g))
        )
        return loglik, beta, sigma_e2, factor


def _golden_section(f, lo: float, hi: float, tol: float) -> float:
    """Maximize a unimodal f on [lo, hi]."""
    a, b = lo, hi
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
    return (a + b) / 2.0


def _optimize_log_lambda(design: _Design) -> float:
    """Coarse grid to bracket the maximum, then golden section inside the bracket."""

    def objective(theta: float) -> float:
        return design.profile(math.exp(theta))[0]

    lo, hi = LOG_LAMBDA_BOUNDS
    grid = np.linspace(lo, hi, GRID_POINTS)
    values = [objective(theta) for theta in grid]
    best = int(np.argmax(values))
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, GRID_POINTS - 1)]
    return _golden_section(objective, a, b, SEARCH_TOLERANCE)


def profiled_loglik(
    rows: Sequence[LongRow],
    lam: float,
    include_construction: bool = True,
    levels: tuple[str, ...] = DEFAULT_LEVELS,
) -> float:
    """Maximum log-likelihood over beta and sigma_e2 with lam held fixed."""
    return _Design(rows, include_construction, tuple(levels)).profile(lam)[0]


def fit_lmm(
    rows: Sequence[LongRow],
    include_construction: bool = True,
    levels: Optional[Sequence[str]] = None,
) -> LmmFit:
    """
    Fit the random-intercept model by ML.

    Args:
        rows: One row per (participle, construction)
        include_construction: Add treatment-coded construction dummies
        levels: Factor levels in use, baseline first

    Returns:
        LmmFit at the likelihood maximum; sigma_u2 is exactly 0 when the
        boundary beats every interior lam, and sigma_e2 never drops below
        RESIDUAL_VARIANCE_FLOOR times the mean squared response

    Raises:
        DesignError: a listed level is absent from all rows
        InputError: fewer than 2 groups
    """
    levels = tuple(ConstructionKind(level).value for level in (levels or DEFAULT_LEVELS))
    design = _Design(rows, include_construction, levels)

    lam = math.exp(_optimize_log_lambda(design))
    loglik, beta, sigma_e2, factor = design.profile(lam)
    boundary = design.profile(0.0)
    if boundary[0] >= loglik:
        logger.debug(f"Random-intercept variance at boundary (loglik {boundary[0]:.6f} >= {loglik:.6f})")
        lam = 0.0
        loglik, beta, sigma_e2, factor = boundary

    if sigma_e2 <= design.sigma_e2_floor:
        logger.warning("Response is fitted exactly; residual variance held at its floor")

    cov = sigma_e2 * linalg.cho_solve(factor, np.eye(len(beta)))
    se = np.sqrt(np.diag(cov))
    t = beta / se
    p = 2.0 * norm.sf(np.abs(t))

    fit = LmmFit(
        names=design.names,
        beta=beta,
        se=se,
        t=t,
        p=p,
        sigma_u2=lam * sigma_e2,
        sigma_e2=sigma_e2,
        loglik=loglik,
        lam=lam,
        n_obs=design.n_obs,
        n_groups=design.n_groups,
        levels=levels,
    )
    logger.debug(
        f"LMM fit ({'construction' if include_construction else 'intercept only'}): "
        f"loglik={loglik:.4f}, sigma_u2={fit.sigma_u2:.4g}, sigma_e2={sigma_e2:.4g}"
    )
    return fit
