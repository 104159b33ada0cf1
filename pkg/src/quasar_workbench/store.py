"""Append-only snapshot store.

Each snapshot is one JSON file named snapshot-<id>.json under the store root;
existing files are never rewritten (edits create new snapshots). An index is
kept in index.json and rebuilt whenever it disagrees with the directory, so
the directory is always the source of truth. Writes are serialized through a
single-writer lock; reads need no coordination.
"""
from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from .assessment import AssessmentSnapshot
from .errors import StoreError, UnknownSnapshotError
from .serialization import format_timestamp, snapshot_from_doc, snapshot_to_doc

_SNAPSHOT_PREFIX = "snapshot-"
_INDEX_NAME = "index.json"


def _canonical_body(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k not in ("id", "timestamp")}
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def content_id(doc: dict) -> str:
    """Deterministic snapshot id: short hash of the content (id/time excluded)."""
    return hashlib.sha256(_canonical_body(doc).encode("utf-8")).hexdigest()[:12]


@dataclass(frozen=True)
class IndexEntry:
    id: str
    timestamp: str
    label: str


class SnapshotStore:
    """File-backed, append-only collection of assessment snapshots."""

    def __init__(self, root: str | Path, clock: Callable[[], datetime] | None = None):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        if not self.root.is_dir():
            raise StoreError(f"store root {self.root} is not a directory")
        self._clock = clock or (lambda: datetime.now(timezone.utc))
        self._write_lock = threading.Lock()

    def _path(self, snapshot_id: str) -> Path:
        safe = "".join(c if c.isalnum() or c in "-_." else "_" for c in snapshot_id)
        return self.root / f"{_SNAPSHOT_PREFIX}{safe}.json"

    def add(self, doc: dict) -> str:
        """Persist a snapshot document; returns its id.

        Missing ids are derived from the content hash; missing timestamps come
        from the store clock. Re-adding identical content under the same id is
        idempotent; changing the content of an existing id is refused
        (append-only: edits must become new snapshots).
        """
        with self._write_lock:
            doc = dict(doc)
            if not doc.get("id"):
                doc["id"] = content_id(doc)
            if not doc.get("timestamp"):
                doc["timestamp"] = format_timestamp(self._clock())
            # validate before persisting anything
            snapshot_from_doc(doc)
            path = self._path(doc["id"])
            serialized = json.dumps(doc, indent=2, sort_keys=True) + "\n"
            if path.exists():
                existing = json.loads(path.read_text(encoding="utf-8"))
                if _canonical_body(existing) == _canonical_body(doc):
                    return doc["id"]
                raise StoreError(
                    f"snapshot {doc['id']!r} already exists with different content; "
                    "the store is append-only, save the edit as a new snapshot"
                )
            path.write_text(serialized, encoding="utf-8")
            self._rebuild_index()
            return doc["id"]

    def add_snapshot(self, snapshot: AssessmentSnapshot) -> str:
        return self.add(snapshot_to_doc(snapshot))

    def get_doc(self, snapshot_id: str) -> dict:
        path = self._path(snapshot_id)
        if not path.exists():
            raise UnknownSnapshotError(f"no snapshot with id {snapshot_id!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    def get(self, snapshot_id: str) -> AssessmentSnapshot:
        return snapshot_from_doc(self.get_doc(snapshot_id))

    def index(self) -> list[IndexEntry]:
        """Current index, rebuilt first if it disagrees with the directory."""
        entries = self._scan()
        index_path = self.root / _INDEX_NAME
        on_disk = None
        if index_path.exists():
            try:
                on_disk = json.loads(index_path.read_text(encoding="utf-8"))
            except json.JSONDecodeError:
                on_disk = None
        fresh = [{"id": e.id, "timestamp": e.timestamp, "label": e.label} for e in entries]
        if on_disk != fresh:
            self._write_index(fresh)
        return entries

    def _scan(self) -> list[IndexEntry]:
        entries = []
        for path in sorted(self.root.glob(f"{_SNAPSHOT_PREFIX}*.json")):
            try:
                doc = json.loads(path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError):
                continue
            entries.append(
                IndexEntry(
                    id=str(doc.get("id", path.stem[len(_SNAPSHOT_PREFIX):])),
                    timestamp=str(doc.get("timestamp", "")),
                    label=str(doc.get("label", "")),
                )
            )
        entries.sort(key=lambda e: (e.timestamp, e.id))
        return entries

    def _write_index(self, fresh: list[dict]) -> None:
        (self.root / _INDEX_NAME).write_text(
            json.dumps(fresh, indent=2) + "\n", encoding="utf-8"
        )

    def _rebuild_index(self) -> None:
        self._write_index(
            [{"id": e.id, "timestamp": e.timestamp, "label": e.label} for e in self._scan()]
        )
