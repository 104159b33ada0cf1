"""Score reports and markdown rendering, including the committed golden file."""
from __future__ import annotations

import pytest

from quasar_workbench.inventory import classify_all
from quasar_workbench.report import build_score_report, render_report, score_report_to_doc
from quasar_workbench.serialization import load_inventory, snapshot_from_doc

from tests.conftest import FIXTURES, REPO_ROOT

GOLDEN = REPO_ROOT / "tests" / "golden" / "report-basic.md"


def _basic_report(basic_snapshot_doc):
    warnings: list[str] = []
    snapshot = snapshot_from_doc(basic_snapshot_doc, warnings_sink=warnings)
    return snapshot, build_score_report(snapshot, extra_warnings=warnings)


def test_basic_fixture_scores(basic_snapshot_doc):
    _, report = _basic_report(basic_snapshot_doc)
    assert report.pqr == pytest.approx(1.44, abs=1e-12)
    assert report.pqr_normalized == pytest.approx(0.48, abs=1e-12)
    assert report.pi.literal == pytest.approx(0.24, abs=1e-12)
    assert report.pi.rescaled == pytest.approx(0.48, abs=1e-12)
    assert report.rs == pytest.approx(0.3440930106817051, abs=1e-12)
    assert report.risk is not None
    assert report.risk[0] == pytest.approx(0.34, abs=1e-12)
    assert report.gaps is not None
    assert report.gaps.ranking == (0, 1)


def test_zero_snapshot_gaps_equal_targets(zero_snapshot_doc):
    snapshot = snapshot_from_doc(zero_snapshot_doc)
    report = build_score_report(snapshot)
    assert report.pqr == 0.0
    assert report.gaps is not None
    assert report.gaps.gaps == snapshot.target_state
    # no risk matrix in this fixture: noted, not defaulted
    assert report.risk is None
    assert any("risk matrix absent" in w for w in report.warnings)
    markdown = render_report(snapshot, report)
    assert "Risk matrix absent" in markdown
    assert "No classified inventory" in markdown


def test_golden_report_is_byte_identical(basic_snapshot_doc):
    snapshot, report = _basic_report(basic_snapshot_doc)
    inventory = classify_all(load_inventory(FIXTURES / "inventory-12.json"))
    markdown = render_report(snapshot, report, inventory)
    assert markdown.encode() == GOLDEN.read_bytes()


def test_render_is_deterministic(basic_snapshot_doc):
    snapshot, report = _basic_report(basic_snapshot_doc)
    a = render_report(snapshot, report)
    b = render_report(snapshot, report)
    assert a == b


def test_report_doc_shape(basic_snapshot_doc):
    _, report = _basic_report(basic_snapshot_doc)
    doc = score_report_to_doc(report)
    assert doc["pqr"]["value"] == pytest.approx(1.44, abs=1e-12)
    assert doc["pqr"]["normalized"] == pytest.approx(0.48, abs=1e-12)
    assert doc["pi"]["n"] == 2
    assert doc["gaps"]["ranking"] == [0, 1]
    assert doc["riskVector"][2] == pytest.approx(0.65, abs=1e-12)


def test_declared_dependencies_render(basic_snapshot_doc):
    from quasar_workbench.inventory import CryptoAsset

    snapshot, report = _basic_report(basic_snapshot_doc)
    inventory = classify_all(
        [
            CryptoAsset(
                id="edge-tls",
                name="edge",
                kind="key-exchange",
                algorithm="RSA",
                sensitivity=1.0,
                retention_years=20,
                depends_on=("vendor-lib", "hsm-feed"),
            )
        ]
    )
    markdown = render_report(snapshot, report, inventory)
    assert "edge-tls depends on: vendor-lib, hsm-feed" in markdown


def test_per_domain_weights_noted_in_report(basic_snapshot_doc):
    doc = dict(basic_snapshot_doc)
    doc["perDomainWeights"] = {
        "technical": [1.0, 0.0],
        "security": [0.0, 1.0],
        "operational": [0.5, 0.5],
    }
    snapshot = snapshot_from_doc(doc)
    report = build_score_report(snapshot)
    expected = 0.5 * 1.0 + 0.4 * 1.0 + (0.1 * 0.5 + 0.8 * 0.5)
    assert report.pqr == pytest.approx(expected, abs=1e-12)
    assert any("per-domain weights" in w for w in report.warnings)
