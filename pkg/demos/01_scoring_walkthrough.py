#!/usr/bin/env python3
"""Walk through the readiness scoring pipeline on the shipped basic fixture.

Shows each score the workbench derives from one snapshot: the composite PQR
(raw 0-3 and normalized), the weighted assessment aggregate, the gap ranking
against the target state, the risk vector, the performance indicator in both
its literal and rescaled forms, and the root-sum-square readiness score.
"""
import json
from pathlib import Path

from quasar_workbench import (
    WeightVector,
    aggregate_assessment,
    build_score_report,
    normalized_pqr,
)
from quasar_workbench.serialization import snapshot_from_doc

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "snapshot-basic.json"


def main() -> None:
    doc = json.loads(FIXTURE.read_text())
    snapshot = snapshot_from_doc(doc)
    print(f"snapshot {snapshot.id!r}: {snapshot.label}")
    print(f"  areas: {len(snapshot.domain_scores)}, weights {snapshot.domain_weights.weights}")

    report = build_score_report(snapshot)
    print(f"\nPQR = {report.pqr:.6g} on the 0-3 scale")
    print(f"    = {normalized_pqr(report.pqr):.6g} normalized (PQR/3)")

    print(f"\nper-area current state (mean of T/S/O): {[round(c, 4) for c in report.current]}")
    print(f"PI literal (1/n prefactor) = {report.pi.literal:.6g}")
    print(f"PI rescaled by n={report.pi.n}      = {report.pi.rescaled:.6g}")
    print(f"RS (root sum square)       = {report.rs:.6g}")

    if report.gaps:
        print("\ngap ranking (deficit first):")
        for rank, area in enumerate(report.gaps.ranking, start=1):
            print(f"  {rank}. area {area + 1}: gap {report.gaps.gaps[area]:+.4f}")

    if report.risk:
        print(f"\nrisk vector (category order): {[round(r, 4) for r in report.risk]}")

    # the aggregation primitive is also usable standalone, e.g. one domain's
    # criteria rolled up under bespoke weights
    criteria = [0.3, 0.9, 0.6]
    weights = WeightVector.from_values([0.5, 0.25, 0.25])
    print(f"\nstandalone aggregate of {criteria} under {weights.weights}:"
          f" {aggregate_assessment(criteria, weights):.4f}")


if __name__ == "__main__":
    main()
