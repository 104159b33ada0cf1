"""Score reports: the bundle of derived numbers for one snapshot, plus the
markdown rendering used by the CLI `report` command.

Every number in a report is reproducible from the snapshot through the pure
core operations; rendering is deterministic for identical inputs. The
'current state' vector feeding gaps, PI and RS is the per-area mean of the
three domain scores (a workbench convention, documented in the README).
"""
from __future__ import annotations

from dataclasses import dataclass

from .assessment import (
    AssessmentSnapshot,
    GapAnalysis,
    PerformanceIndicator,
    compute_pqr,
    compute_pqr_per_domain,
    gap_analysis,
    normalized_pqr,
    performance_indicator,
    readiness_score,
    risk_vector,
)
from .inventory import ClassifiedAsset, rank_hndl


@dataclass(frozen=True)
class ScoreReport:
    snapshot_id: str
    label: str
    pqr: float
    pqr_normalized: float
    pi: PerformanceIndicator
    rs: float
    current: tuple[float, ...]
    gaps: GapAnalysis | None
    risk: tuple[float, float, float] | None
    warnings: tuple[str, ...]


def build_score_report(
    snapshot: AssessmentSnapshot,
    extra_warnings: list[str] | None = None,
) -> ScoreReport:
    """Score a snapshot with the core operations.

    Uses the per-domain weight triple for PQR when the snapshot carries one,
    the shared weight vector otherwise. Optional sections (gaps, risk) are
    omitted with a warning instead of being defaulted.
    """
    warnings = list(extra_warnings or [])
    if snapshot.per_domain_weights is not None:
        wt, ws, wo = snapshot.per_domain_weights
        pqr = compute_pqr_per_domain(snapshot.domain_scores, wt, ws, wo)
        warnings.append("PQR computed with per-domain weights")
    else:
        pqr = compute_pqr(snapshot.domain_scores, snapshot.domain_weights)

    current = snapshot.domain_scores.area_means()
    pi = performance_indicator(current, snapshot.domain_weights)
    rs = readiness_score(current, snapshot.domain_weights)

    gaps = None
    if snapshot.target_state is not None:
        gaps = gap_analysis(current, snapshot.target_state)
    else:
        warnings.append("no target state recorded; gap analysis omitted")

    risk = None
    if snapshot.risk_matrix is not None:
        risk = risk_vector(snapshot.risk_matrix)
    else:
        warnings.append("risk matrix absent; risk aggregation omitted")

    return ScoreReport(
        snapshot_id=snapshot.id,
        label=snapshot.label,
        pqr=pqr,
        pqr_normalized=normalized_pqr(pqr),
        pi=pi,
        rs=rs,
        current=current,
        gaps=gaps,
        risk=risk,
        warnings=tuple(warnings),
    )


def score_report_to_doc(report: ScoreReport) -> dict:
    doc = {
        "snapshotId": report.snapshot_id,
        "label": report.label,
        "pqr": {"value": report.pqr, "normalized": report.pqr_normalized},
        "pi": {"literal": report.pi.literal, "rescaled": report.pi.rescaled, "n": report.pi.n},
        "rs": report.rs,
        "current": list(report.current),
        "gaps": None,
        "riskVector": list(report.risk) if report.risk is not None else None,
        "warnings": list(report.warnings),
    }
    if report.gaps is not None:
        doc["gaps"] = {
            "values": list(report.gaps.gaps),
            "ranking": list(report.gaps.ranking),
        }
    return doc


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _heat(x: float) -> str:
    marks = (".", ":", "+", "#")
    idx = min(3, int(x * 4.0))
    return f"{_fmt(x)} {marks[idx]}"


def render_report(
    snapshot: AssessmentSnapshot,
    report: ScoreReport,
    inventory: list[ClassifiedAsset] | None = None,
) -> str:
    """Markdown readiness report. Deterministic for identical inputs."""
    lines: list[str] = []
    out = lines.append
    out("# Post-Quantum Readiness Report")
    out("")
    out(f"- Snapshot: `{report.snapshot_id}`" + (f" ({report.label})" if report.label else ""))
    out(f"- Timestamp: {snapshot.timestamp.isoformat().replace('+00:00', 'Z')}")
    out("")
    out("## Summary Scores")
    out("")
    out("| Metric | Value |")
    out("| --- | --- |")
    out(f"| PQR (literal, 0 to 3) | {_fmt(report.pqr)} |")
    out(f"| PQR (normalized) | {_fmt(report.pqr_normalized)} |")
    out(f"| PI (literal, 1/n prefactor) | {_fmt(report.pi.literal)} |")
    out(f"| PI (rescaled by n={report.pi.n}) | {_fmt(report.pi.rescaled)} |")
    out(f"| RS (root sum square) | {_fmt(report.rs)} |")
    out("")
    out("## Gap Analysis")
    out("")
    if report.gaps is None:
        out("No target state recorded; gap analysis omitted.")
    else:
        out("| Rank | Area | Current | Target | Gap |")
        out("| --- | --- | --- | --- | --- |")
        assert snapshot.target_state is not None
        for rank, area in enumerate(report.gaps.ranking, start=1):
            out(
                f"| {rank} | area {area + 1} | {_fmt(report.current[area])} "
                f"| {_fmt(snapshot.target_state[area])} | {_fmt(report.gaps.gaps[area])} |"
            )
    out("")
    out("## Risk Vector")
    out("")
    if report.risk is None:
        out("Risk matrix absent; no risk aggregation for this snapshot.")
    else:
        out("| Category | Aggregated risk |")
        out("| --- | --- |")
        for i, value in enumerate(report.risk, start=1):
            out(f"| category {i} | {_fmt(value)} |")
    out("")
    out("## Technical Readiness Matrix")
    out("")
    if snapshot.technical_matrix is None:
        out("No technical readiness matrix recorded for this snapshot.")
    else:
        out("| Row | cell 1 | cell 2 | cell 3 |")
        out("| --- | --- | --- | --- |")
        for label, row in zip(
            snapshot.technical_matrix.ROW_LABELS, snapshot.technical_matrix.rows
        ):
            out(f"| {label} | " + " | ".join(_heat(v) for v in row) + " |")
    out("")
    out("## Harvest-Now-Decrypt-Later Top 10")
    out("")
    if not inventory:
        out("No classified inventory supplied with this report.")
    else:
        ranked = rank_hndl(inventory, top_n=10)
        out("| # | Asset | Vulnerability | Priority | Retention (years) |")
        out("| --- | --- | --- | --- | --- |")
        for i, c in enumerate(ranked, start=1):
            out(
                f"| {i} | {c.asset.id} | {c.vulnerability.value} "
                f"| {_fmt(c.hndl_priority)} | {_fmt(c.asset.retention_years)} |"
            )
        dependents = [c for c in ranked if c.asset.depends_on]
        if dependents:
            out("")
            out("Declared dependencies (no discovery is performed):")
            for c in dependents:
                out(f"- {c.asset.id} depends on: {', '.join(c.asset.depends_on)}")
    out("")
    out("## Warnings")
    out("")
    if report.warnings:
        for w in report.warnings:
            out(f"- {w}")
    else:
        out("None.")
    out("")
    return "\n".join(lines)
