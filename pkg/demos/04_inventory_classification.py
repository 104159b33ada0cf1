#!/usr/bin/env python3
"""Classify the shipped 12-asset inventory and derive the technical matrix.

Shows the vulnerability rule table at work, the harvest-now-decrypt-later
priority ranking, and how share counts become the 3x3 technical readiness
matrix (with coverage warnings when a denominator is empty).
"""
from datetime import datetime, timezone
from pathlib import Path

from quasar_workbench import classify_all, derive_technical_matrix, rank_hndl
from quasar_workbench.serialization import load_inventory

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "inventory-12.json"


def main() -> None:
    assets = load_inventory(FIXTURE)
    classified = classify_all(assets)

    print(f"{'asset':22s} {'algorithm':10s} {'class':18s} {'HNDL':>6s}  rule")
    for c in classified:
        print(
            f"{c.asset.id:22s} {c.asset.algorithm:10s} "
            f"{c.vulnerability.value:18s} {c.hndl_priority:6.3f}  {c.rationale}"
        )

    print("\nharvest-now-decrypt-later top 5:")
    for i, c in enumerate(rank_hndl(classified, top_n=5), start=1):
        print(f"  {i}. {c.asset.id} (priority {c.hndl_priority:.3f}, "
              f"retention {c.asset.retention_years:g}y)")

    derived = derive_technical_matrix(
        classified, reference_time=datetime(2026, 8, 1, tzinfo=timezone.utc)
    )
    print("\nderived technical readiness matrix:")
    for label, row in zip(("cryptographic", "infrastructure", "algorithm"), derived.matrix.rows):
        cells = "  ".join(f"{v:.3f}" for v in row)
        print(f"  {label:15s} {cells}")
    for warning in derived.warnings:
        print(f"  note: {warning}")


if __name__ == "__main__":
    main()
