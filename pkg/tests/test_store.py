"""Append-only snapshot store: round-trips, immutability, index rebuild."""
from __future__ import annotations

import json
from datetime import datetime, timezone

import pytest

from quasar_workbench.errors import StoreError, UnknownSnapshotError
from quasar_workbench.serialization import snapshot_from_doc, snapshot_to_doc
from quasar_workbench.store import SnapshotStore

FIXED_NOW = datetime(2026, 3, 1, 12, 0, 0, tzinfo=timezone.utc)


def fixed_clock():
    return FIXED_NOW


def test_add_and_show_roundtrip(tmp_path, basic_snapshot_doc):
    store = SnapshotStore(tmp_path, clock=fixed_clock)
    snapshot_id = store.add(basic_snapshot_doc)
    assert snapshot_id == "basic"
    loaded = store.get(snapshot_id)
    original = snapshot_from_doc(basic_snapshot_doc)
    assert snapshot_to_doc(loaded) == snapshot_to_doc(original)


def test_roundtrip_all_fixtures(tmp_path, fixtures_dir):
    store = SnapshotStore(tmp_path, clock=fixed_clock)
    for name in ("snapshot-basic.json", "snapshot-zero.json"):
        doc = json.loads((fixtures_dir / name).read_text())
        snapshot_id = store.add(doc)
        reloaded = snapshot_to_doc(store.get(snapshot_id))
        assert reloaded == snapshot_to_doc(snapshot_from_doc(doc))


def test_missing_id_gets_content_hash_and_missing_timestamp_gets_clock(
    tmp_path, basic_snapshot_doc
):
    store = SnapshotStore(tmp_path, clock=fixed_clock)
    doc = dict(basic_snapshot_doc)
    del doc["id"]
    del doc["timestamp"]
    snapshot_id = store.add(doc)
    assert len(snapshot_id) == 12
    stored = store.get_doc(snapshot_id)
    assert stored["timestamp"] == "2026-03-01T12:00:00Z"
    # same content, same derived id: idempotent re-add
    assert store.add(dict(doc)) == snapshot_id
    assert len(store.index()) == 1


def test_append_only_refuses_content_edits(tmp_path, basic_snapshot_doc):
    store = SnapshotStore(tmp_path, clock=fixed_clock)
    store.add(basic_snapshot_doc)
    edited = json.loads(json.dumps(basic_snapshot_doc))
    edited["domainWeights"] = [0.5, 0.5]
    with pytest.raises(StoreError):
        store.add(edited)
    # the original file is untouched
    assert store.get_doc("basic")["domainWeights"] == [0.4, 0.6]


def test_unknown_id_raises(tmp_path):
    store = SnapshotStore(tmp_path, clock=fixed_clock)
    with pytest.raises(UnknownSnapshotError):
        store.get_doc("nope")


def test_index_lists_entries_sorted(tmp_path, basic_snapshot_doc, zero_snapshot_doc):
    store = SnapshotStore(tmp_path, clock=fixed_clock)
    store.add(basic_snapshot_doc)
    store.add(zero_snapshot_doc)
    entries = store.index()
    assert [e.id for e in entries] == ["basic", "zero"]
    assert entries[0].label == "Basic readiness fixture"


def test_index_rebuilds_when_stale(tmp_path, basic_snapshot_doc, zero_snapshot_doc):
    store = SnapshotStore(tmp_path, clock=fixed_clock)
    store.add(basic_snapshot_doc)
    # simulate an out-of-band copy into the store directory
    rogue = dict(zero_snapshot_doc)
    (tmp_path / "snapshot-zero.json").write_text(json.dumps(rogue))
    (tmp_path / "index.json").write_text("[]")  # stale
    entries = store.index()
    assert {e.id for e in entries} == {"basic", "zero"}
    on_disk = json.loads((tmp_path / "index.json").read_text())
    assert {e["id"] for e in on_disk} == {"basic", "zero"}


def test_invalid_snapshot_not_persisted(tmp_path, basic_snapshot_doc):
    store = SnapshotStore(tmp_path, clock=fixed_clock)
    bad = json.loads(json.dumps(basic_snapshot_doc))
    bad["domainWeights"] = [0.9, 0.9]
    with pytest.raises(Exception):
        store.add(bad)
    assert store.index() == []
