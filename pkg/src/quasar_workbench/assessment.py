"""Core readiness scoring mathematics.

Implements the composite post-quantum readiness score (PQR), weighted
assessment aggregation, gap analysis, risk-matrix aggregation, the composite
performance indicator (PI) and the root-sum-square readiness score (RS).

All scores live on a unified [0, 1] scale; weight vectors are nonnegative and
sum to 1. Every type here is an immutable value and every operation is a pure
function, so everything is safe for unrestricted concurrent use.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionError,
    DomainError,
    MatrixAbsentError,
    NormalizationError,
    ScoreRangeError,
)

# Weight-sum gate: within EXACT_TOL the vector is taken as-is; between
# EXACT_TOL and RENORM_TOL it is renormalized with a warning; beyond that it
# is rejected. Absorbs decimal round-off without masking real user error.
WEIGHT_SUM_EXACT_TOL = 1e-9
WEIGHT_SUM_RENORM_TOL = 1e-6

# PQR sums three [0,1] domains under weights totalling 1.
PQR_MAX = 3.0


class WeightRenormalizationWarning(UserWarning):
    """Issued when a slightly-off weight vector is auto-renormalized."""


def _check_scores(values: Sequence[float], what: str) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    for v in out:
        if not (0.0 <= v <= 1.0) or math.isnan(v):
            raise ScoreRangeError(f"{what} value {v!r} outside [0, 1]")
    return out


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative weights constrained to sum to 1 (within 1e-9)."""

    weights: tuple[float, ...]

    def __post_init__(self):
        ws = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if len(ws) < 1:
            raise DimensionError("weight vector must have at least one entry")
        for w in ws:
            if w < 0.0 or math.isnan(w):
                raise NormalizationError(f"weight {w!r} is negative")
        total = math.fsum(ws)
        if abs(total - 1.0) > WEIGHT_SUM_EXACT_TOL:
            raise NormalizationError(
                f"weights sum to {total!r}, expected 1 within {WEIGHT_SUM_EXACT_TOL}"
            )

    @classmethod
    def from_values(
        cls,
        values: Iterable[float],
        *,
        warnings_sink: list[str] | None = None,
    ) -> "WeightVector":
        """Build a weight vector, applying the normalization gate.

        Sums within 1e-9 of 1 pass through untouched; sums off by up to 1e-6
        are renormalized and a WeightRenormalizationWarning is issued (and
        recorded in warnings_sink when given); anything worse is rejected.
        """
        ws = tuple(float(w) for w in values)
        if len(ws) < 1:
            raise DimensionError("weight vector must have at least one entry")
        for w in ws:
            if w < 0.0 or math.isnan(w):
                raise NormalizationError(f"weight {w!r} is negative")
        total = math.fsum(ws)
        if abs(total - 1.0) <= WEIGHT_SUM_EXACT_TOL:
            return cls(ws)
        if abs(total - 1.0) <= WEIGHT_SUM_RENORM_TOL:
            msg = f"weights summed to {total!r}; renormalized to 1"
            warnings.warn(msg, WeightRenormalizationWarning, stacklevel=2)
            if warnings_sink is not None:
                warnings_sink.append(msg)
            return cls(tuple(w / total for w in ws))
        raise NormalizationError(
            f"weights sum to {total!r}; off by more than {WEIGHT_SUM_RENORM_TOL}"
        )

    def __len__(self) -> int:
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


@dataclass(frozen=True)
class DomainScores:
    """Per-area technical (T), security (S) and operational (O) scores.

    The three lists share one index: area i is scored in all three domains.
    """

    technical: tuple[float, ...]
    security: tuple[float, ...]
    operational: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "technical", _check_scores(self.technical, "technical"))
        object.__setattr__(self, "security", _check_scores(self.security, "security"))
        object.__setattr__(self, "operational", _check_scores(self.operational, "operational"))
        n = len(self.technical)
        if len(self.security) != n or len(self.operational) != n:
            raise DimensionError(
                "technical, security and operational score lists must share one length; got "
                f"{n}/{len(self.security)}/{len(self.operational)}"
            )

    def __len__(self) -> int:
        return len(self.technical)

    def area_means(self) -> tuple[float, ...]:
        """Per-area mean of the three domain scores.

        Workbench convention for the 'current state' vector consumed by gap
        analysis, PI and RS when scoring a snapshot.
        """
        return tuple(
            (t + s + o) / 3.0
            for t, s, o in zip(self.technical, self.security, self.operational)
        )


def _check_grid(rows, what: str) -> tuple[tuple[float, ...], ...]:
    grid = tuple(_check_scores(row, what) for row in rows)
    if len(grid) != 3 or any(len(row) != 3 for row in grid):
        raise DimensionError(f"{what} must be a 3x3 grid")
    return grid


@dataclass(frozen=True)
class TechnicalReadinessMatrix:
    """3x3 readiness grid; rows fixed as cryptographic, infrastructure, algorithm."""

    rows: tuple[tuple[float, ...], ...]

    ROW_LABELS = ("cryptographic", "infrastructure", "algorithm")

    def __post_init__(self):
        object.__setattr__(self, "rows", _check_grid(self.rows, "technical matrix"))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.rows, dtype=float)


@dataclass(frozen=True)
class RiskMatrix:
    """3x3 risk scores (row = category, column = dimension) plus dimension weights."""

    entries: tuple[tuple[float, ...], ...]
    dimension_weights: WeightVector

    def __post_init__(self):
        object.__setattr__(self, "entries", _check_grid(self.entries, "risk matrix"))
        if len(self.dimension_weights) != 3:
            raise DimensionError("risk matrix needs exactly 3 dimension weights")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)


@dataclass(frozen=True)
class AssessmentSnapshot:
    """One dated, weighted scoring of an organization.

    domain_weights is shared across the T/S/O domains (the default scoring
    mode); per_domain_weights optionally carries a separate normalized vector
    per domain. target_state, when present, has one entry per assessed area
    and feeds gap analysis.
    """

    id: str
    timestamp: datetime
    label: str
    domain_scores: DomainScores
    domain_weights: WeightVector
    technical_matrix: TechnicalReadinessMatrix | None = None
    risk_matrix: RiskMatrix | None = None
    target_state: tuple[float, ...] | None = None
    notes: str = ""
    per_domain_weights: tuple[WeightVector, WeightVector, WeightVector] | None = None

    def __post_init__(self):
        n = len(self.domain_scores)
        if len(self.domain_weights) != n:
            raise DimensionError(
                f"domain weights length {len(self.domain_weights)} != score length {n}"
            )
        if self.target_state is not None:
            object.__setattr__(
                self, "target_state", _check_scores(self.target_state, "target state")
            )
            if len(self.target_state) != n:
                raise DimensionError(
                    f"target state length {len(self.target_state)} != area count {n}"
                )
        if self.per_domain_weights is not None:
            trip = tuple(self.per_domain_weights)
            if len(trip) != 3:
                raise DimensionError("per-domain weights must be a triple (T, S, O)")
            for wv in trip:
                if len(wv) != n:
                    raise DimensionError(
                        f"per-domain weight length {len(wv)} != area count {n}"
                    )
            object.__setattr__(self, "per_domain_weights", trip)


# ---------------------------------------------------------------------------
# Scoring operations
# ---------------------------------------------------------------------------

def _require_same_length(weights: WeightVector, n: int, what: str) -> None:
    if len(weights) != n:
        raise DimensionError(f"{what}: {n} scores vs {len(weights)} weights")


def compute_pqr(scores: DomainScores, weights: WeightVector) -> float:
    """Composite post-quantum readiness: sum_i (T_i*w_i + S_i*w_i + O_i*w_i).

    Lies in [0, 3] for [0,1] scores under normalized weights; divide by
    PQR_MAX (see normalized_pqr) for a [0,1] reading.
    """
    _require_same_length(weights, len(scores), "compute_pqr")
    w = weights.as_array()
    t = np.asarray(scores.technical)
    s = np.asarray(scores.security)
    o = np.asarray(scores.operational)
    return float(np.sum(t * w + s * w + o * w))


def normalized_pqr(pqr: float) -> float:
    """PQR rescaled onto [0, 1]."""
    return pqr / PQR_MAX


def compute_pqr_per_domain(
    scores: DomainScores,
    technical_weights: WeightVector,
    security_weights: WeightVector,
    operational_weights: WeightVector,
) -> float:
    """PQR variant with one normalized weight vector per domain.

    Opt-in alternative to the shared-weight form: sum_i (T_i*wT_i + S_i*wS_i
    + O_i*wO_i). Same [0, 3] range.
    """
    n = len(scores)
    _require_same_length(technical_weights, n, "compute_pqr_per_domain (technical)")
    _require_same_length(security_weights, n, "compute_pqr_per_domain (security)")
    _require_same_length(operational_weights, n, "compute_pqr_per_domain (operational)")
    t = np.asarray(scores.technical)
    s = np.asarray(scores.security)
    o = np.asarray(scores.operational)
    return float(
        np.sum(
            t * technical_weights.as_array()
            + s * security_weights.as_array()
            + o * operational_weights.as_array()
        )
    )


def aggregate_assessment(criteria: Sequence[float], weights: WeightVector) -> float:
    """Weighted aggregate of criterion scores: sum_j c_j*w_j, in [0, 1]."""
    c = _check_scores(criteria, "criterion")
    _require_same_length(weights, len(c), "aggregate_assessment")
    return float(np.dot(np.asarray(c), weights.as_array()))


@dataclass(frozen=True)
class GapAnalysis:
    """Signed per-area gaps (target - current) plus a deficit-first ranking.

    gaps preserves area input order; ranking lists area indices by descending
    gap, equal gaps ordered by area input order. Positive gap means deficit.
    """

    gaps: tuple[float, ...]
    ranking: tuple[int, ...]


def gap_analysis(current: Sequence[float], target: Sequence[float]) -> GapAnalysis:
    """Element-wise gap value: target state minus current state."""
    cur = _check_scores(current, "current state")
    tgt = _check_scores(target, "target state")
    if len(cur) != len(tgt):
        raise DimensionError(
            f"gap_analysis: {len(cur)} current vs {len(tgt)} target entries"
        )
    gaps = tuple(t - c for c, t in zip(cur, tgt))
    ranking = tuple(sorted(range(len(gaps)), key=lambda i: (-gaps[i], i)))
    return GapAnalysis(gaps=gaps, ranking=ranking)


def risk_vector(matrix: RiskMatrix) -> tuple[float, float, float]:
    """Aggregated risk per category: entries . dimension_weights.

    Output order matches the row (category) order; each entry in [0, 1].
    """
    product = matrix.as_array() @ matrix.dimension_weights.as_array()
    r = tuple(float(x) for x in product)
    return r  # type: ignore[return-value]


@dataclass(frozen=True)
class PerformanceIndicator:
    """Composite performance indicator, literal and rescaled forms.

    literal is (1/n)*sum(w_i*M_i) exactly as defined; because the weights are
    already normalized the extra 1/n squeezes it into [0, 1/n], so the
    n*literal rescaling is reported alongside. Neither is silently preferred.
    """

    literal: float
    rescaled: float
    n: int


def performance_indicator(
    metrics: Sequence[float], weights: WeightVector
) -> PerformanceIndicator:
    """(1/n)*sum_i w_i*M_i, with the n*PI rescaling reported alongside."""
    m = _check_scores(metrics, "metric")
    if len(m) == 0:
        raise DomainError("performance_indicator needs at least one metric")
    _require_same_length(weights, len(m), "performance_indicator")
    weighted = float(np.dot(np.asarray(m), weights.as_array()))
    n = len(m)
    return PerformanceIndicator(literal=weighted / n, rescaled=weighted, n=n)


def readiness_score(readiness: Sequence[float], weights: WeightVector) -> float:
    """Root-sum-square readiness: sqrt(sum_i (w_i*r_i)^2), in [0, 1].

    Note the squaring mathematically emphasizes the largest weighted terms,
    not the weakest components; implemented literally.
    """
    r = _check_scores(readiness, "readiness")
    _require_same_length(weights, len(r), "readiness_score")
    terms = np.asarray(r) * weights.as_array()
    return float(math.sqrt(float(np.dot(terms, terms))))


def require_risk_matrix(snapshot: AssessmentSnapshot) -> RiskMatrix:
    """Risk matrix of a snapshot, or a specific 'matrix absent' error."""
    if snapshot.risk_matrix is None:
        raise MatrixAbsentError(f"snapshot {snapshot.id!r} carries no risk matrix")
    return snapshot.risk_matrix


def require_technical_matrix(snapshot: AssessmentSnapshot) -> TechnicalReadinessMatrix:
    """Technical matrix of a snapshot, or a specific 'matrix absent' error."""
    if snapshot.technical_matrix is None:
        raise MatrixAbsentError(f"snapshot {snapshot.id!r} carries no technical matrix")
    return snapshot.technical_matrix
