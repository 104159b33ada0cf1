"""Quantitative post-quantum readiness workbench.

Library surface: composite readiness scoring (assessment), transformation
trajectories (trajectory), constrained allocation optimization (expressions,
optimizer), cryptographic inventory classification (inventory, certificates,
probe), plus persistence, reports, a CLI and a local HTTP API.
"""
from .assessment import (
    AssessmentSnapshot,
    DomainScores,
    GapAnalysis,
    PerformanceIndicator,
    RiskMatrix,
    TechnicalReadinessMatrix,
    WeightVector,
    aggregate_assessment,
    compute_pqr,
    compute_pqr_per_domain,
    gap_analysis,
    normalized_pqr,
    performance_indicator,
    readiness_score,
    risk_vector,
)
from .certificates import CertificateRecord, parse_certificates
from .inventory import (
    ClassifiedAsset,
    CryptoAsset,
    VulnerabilityClass,
    classify,
    classify_all,
    derive_technical_matrix,
    rank_hndl,
)
from .optimizer import OptimizationProblem, Solution, VariableSpec, solve
from .expressions import evaluate, gradient, parse_expression
from .probe import probe_endpoint, probe_many
from .report import ScoreReport, build_score_report, render_report
from .store import SnapshotStore
from .trajectory import (
    Action,
    ActionSet,
    LambdaFit,
    ProgressParams,
    SeriesBundle,
    TimeSeries,
    TrajectoryParams,
    fit_lambda,
    implementation_progress,
    phase_transformation,
    project_series,
    series_to_csv,
    timeline_value,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionSet",
    "AssessmentSnapshot",
    "CertificateRecord",
    "ClassifiedAsset",
    "CryptoAsset",
    "DomainScores",
    "GapAnalysis",
    "LambdaFit",
    "OptimizationProblem",
    "PerformanceIndicator",
    "ProgressParams",
    "RiskMatrix",
    "ScoreReport",
    "SeriesBundle",
    "SnapshotStore",
    "Solution",
    "TechnicalReadinessMatrix",
    "TimeSeries",
    "TrajectoryParams",
    "VariableSpec",
    "VulnerabilityClass",
    "WeightVector",
    "aggregate_assessment",
    "build_score_report",
    "classify",
    "classify_all",
    "compute_pqr",
    "compute_pqr_per_domain",
    "derive_technical_matrix",
    "evaluate",
    "fit_lambda",
    "gap_analysis",
    "gradient",
    "implementation_progress",
    "normalized_pqr",
    "parse_certificates",
    "parse_expression",
    "performance_indicator",
    "phase_transformation",
    "probe_endpoint",
    "probe_many",
    "project_series",
    "rank_hndl",
    "readiness_score",
    "render_report",
    "risk_vector",
    "series_to_csv",
    "solve",
    "timeline_value",
]
