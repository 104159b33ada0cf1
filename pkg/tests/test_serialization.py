"""Document parsing/validation: field naming in errors, format dispatch."""
from __future__ import annotations

import pytest

from quasar_workbench.errors import SchemaError
from quasar_workbench.serialization import (
    inventory_from_csv,
    inventory_from_doc,
    problem_from_doc,
    projection_from_doc,
    snapshot_from_doc,
    snapshot_to_doc,
)


def test_snapshot_parses_basic(basic_snapshot_doc):
    snapshot = snapshot_from_doc(basic_snapshot_doc)
    assert snapshot.id == "basic"
    assert snapshot.domain_weights.weights == (0.4, 0.6)
    assert snapshot.risk_matrix is not None
    assert snapshot.target_state == (0.9, 0.8)
    assert snapshot.timestamp.isoformat() == "2026-01-15T00:00:00+00:00"


def test_snapshot_roundtrips(basic_snapshot_doc):
    snapshot = snapshot_from_doc(basic_snapshot_doc)
    doc = snapshot_to_doc(snapshot)
    again = snapshot_from_doc(doc)
    assert snapshot_to_doc(again) == doc


def test_weights_slightly_off_renormalize_with_warning(basic_snapshot_doc):
    doc = dict(basic_snapshot_doc)
    doc["domainWeights"] = [0.4, 0.6 + 2e-7]
    sink: list[str] = []
    with pytest.warns(UserWarning):
        snapshot = snapshot_from_doc(doc, warnings_sink=sink)
    assert sum(snapshot.domain_weights.weights) == pytest.approx(1.0, abs=1e-12)
    assert sink


def test_weights_badly_off_name_the_field(basic_snapshot_doc):
    doc = dict(basic_snapshot_doc)
    doc["domainWeights"] = [0.4, 0.5]
    with pytest.raises(SchemaError) as exc_info:
        snapshot_from_doc(doc)
    assert exc_info.value.field == "domainWeights"


def test_missing_required_field_named(basic_snapshot_doc):
    doc = dict(basic_snapshot_doc)
    del doc["domainScores"]
    with pytest.raises(SchemaError) as exc_info:
        snapshot_from_doc(doc)
    assert exc_info.value.field == "domainScores"


def test_score_out_of_range_names_container(basic_snapshot_doc):
    doc = dict(basic_snapshot_doc)
    doc["domainScores"] = {
        "technical": [1.4, 0.2],
        "security": [0.9, 0.4],
        "operational": [0.1, 0.8],
    }
    with pytest.raises(SchemaError) as exc_info:
        snapshot_from_doc(doc)
    assert "domainScores" in exc_info.value.field


def test_bad_timestamp_rejected(basic_snapshot_doc):
    doc = dict(basic_snapshot_doc)
    doc["timestamp"] = "yesterday-ish"
    with pytest.raises(SchemaError) as exc_info:
        snapshot_from_doc(doc)
    assert exc_info.value.field == "timestamp"


def test_per_domain_weights_accepted(basic_snapshot_doc):
    doc = dict(basic_snapshot_doc)
    doc["perDomainWeights"] = {
        "technical": [1.0, 0.0],
        "security": [0.0, 1.0],
        "operational": [0.5, 0.5],
    }
    snapshot = snapshot_from_doc(doc)
    assert snapshot.per_domain_weights is not None
    assert snapshot.per_domain_weights[0].weights == (1.0, 0.0)


def test_problem_doc_parses_and_validates():
    problem = problem_from_doc(
        {
            "variables": [{"name": "x", "lo": 0, "hi": 1}],
            "objectives": ["x"],
            "t": 2.5,
        }
    )
    assert problem.time_value == 2.5
    with pytest.raises(SchemaError) as exc_info:
        problem_from_doc({"variables": [], "objectives": ["x"]})
    assert "problem" in exc_info.value.field or "variables" in exc_info.value.field


def test_problem_doc_undeclared_variable_is_schema_error():
    with pytest.raises(SchemaError):
        problem_from_doc(
            {"variables": [{"name": "x", "lo": 0, "hi": 1}], "objectives": ["x + z"]}
        )


def test_inventory_doc_accepts_bare_list_and_wrapper(inventory_doc):
    wrapped = inventory_from_doc(inventory_doc)
    bare = inventory_from_doc(inventory_doc["assets"])
    assert wrapped == bare
    assert len(wrapped) == 12


def test_inventory_field_errors_are_located(inventory_doc):
    broken = [dict(inventory_doc["assets"][0])]
    broken[0]["sensitivity"] = "high"
    with pytest.raises(SchemaError) as exc_info:
        inventory_from_doc(broken)
    assert "assets[0]" in exc_info.value.field


def test_csv_header_must_match_exactly():
    with pytest.raises(SchemaError):
        inventory_from_csv("id,name\n1,x\n")


def test_projection_doc_defaults():
    p, q, actions, horizon, step, mode = projection_from_doc(
        {"alpha": 0.2, "beta": 0.9, "lambda": 0.5, "horizon": 2.0, "step": 1.0}
    )
    assert p.alpha == 0.2 and p.lam == 0.5
    assert q.i0 == 0.0 and q.i_f == 1.0 and q.k == 1.0
    assert actions.actions == ()
    assert mode == "literal"
    with pytest.raises(SchemaError) as exc_info:
        projection_from_doc({"alpha": 0.2, "beta": 0.9, "horizon": 2.0})
    assert exc_info.value.field == "lambda"
