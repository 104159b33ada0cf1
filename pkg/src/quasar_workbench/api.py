"""Local HTTP API for the workbench.

Serves the same JSON documents as the files on disk. Binds loopback only
unless explicitly widened; no authentication (this is a desk-scale analysis
service, not a product). Scoring, projection, optimization and inventory
requests are stateless and handled concurrently; snapshot writes are
serialized by the store's single-writer lock.

Endpoints:
    GET  /api/health                          liveness
    GET  /api/snapshots                       store index
    GET  /api/snapshots/{id}                  one snapshot document
    POST /api/snapshots                       persist a snapshot, returns {id}
    POST /api/score                           snapshot body -> score report
    POST /api/project                         trajectory params -> series
    POST /api/optimize                        problem -> solution
    POST /api/inventory/classify              assets -> classified + matrix + ranking
    GET  /api/schema/{name}                   JSON schema passthrough

Validation failures answer 400 with {"error", "field"}; unknown ids 404.
"""
from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .errors import (
    SchemaError,
    StoreError,
    UnknownSnapshotError,
    WorkbenchError,
)
from .inventory import classify_all, derive_technical_matrix, rank_hndl
from .optimizer import solve
from .report import build_score_report, score_report_to_doc
from .serialization import (
    classified_to_doc,
    inventory_from_doc,
    problem_from_doc,
    projection_from_doc,
    snapshot_from_doc,
    solution_to_doc,
)
from .store import SnapshotStore
from .trajectory import project_series

_SCHEMA_DIR = Path(__file__).resolve().parent / "schema"

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}


def _series_doc(bundle) -> dict:
    return {
        "times": list(bundle.times),
        "preparedness": list(bundle.preparedness.values),
        "progress": list(bundle.progress.values),
        "shortTerm": list(bundle.short_term.values),
        "mediumTerm": list(bundle.medium_term.values),
        "longTerm": list(bundle.long_term.values),
    }


class WorkbenchHandler(BaseHTTPRequestHandler):
    server_version = "quasar-workbench"
    protocol_version = "HTTP/1.1"

    # injected by create_server
    store: SnapshotStore
    ui_dir: Path | None = None

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        pass  # keep test output quiet; logging seam not needed at desk scale

    # -- plumbing -----------------------------------------------------------

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, message: str, field: str | None = None) -> None:
        self._send_json(status, {"error": message, "field": field})

    def _read_json(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise SchemaError("request body is empty", "$")
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise SchemaError(f"request body is not valid JSON: {exc}", "$") from None

    def _dispatch(self, handler) -> None:
        try:
            handler()
        except UnknownSnapshotError as exc:
            self._send_error_json(404, str(exc))
        except SchemaError as exc:
            self._send_error_json(400, str(exc), exc.field)
        except WorkbenchError as exc:
            self._send_error_json(400, str(exc))
        except Exception as exc:  # noqa: BLE001 - surface as 500, never hang
            self._send_error_json(500, f"internal error: {exc}")

    # -- routing ------------------------------------------------------------

    def do_GET(self):  # noqa: N802 - stdlib naming
        path = self.path.split("?", 1)[0]
        if path == "/api/health":
            self._dispatch(lambda: self._send_json(200, {"status": "ok"}))
        elif path == "/api/snapshots":
            self._dispatch(self._get_index)
        elif path.startswith("/api/snapshots/"):
            snapshot_id = path[len("/api/snapshots/"):]
            self._dispatch(lambda: self._send_json(200, self.store.get_doc(snapshot_id)))
        elif path.startswith("/api/schema/"):
            self._dispatch(lambda: self._get_schema(path[len("/api/schema/"):]))
        elif path.startswith("/api/"):
            self._send_error_json(404, f"no such endpoint: {path}")
        else:
            self._serve_static(path)

    def do_POST(self):  # noqa: N802 - stdlib naming
        path = self.path.split("?", 1)[0]
        routes = {
            "/api/snapshots": self._post_snapshot,
            "/api/score": self._post_score,
            "/api/project": self._post_project,
            "/api/optimize": self._post_optimize,
            "/api/inventory/classify": self._post_classify,
        }
        handler = routes.get(path)
        if handler is None:
            self._send_error_json(404, f"no such endpoint: {path}")
            return
        self._dispatch(handler)

    # -- endpoint bodies ----------------------------------------------------

    def _get_index(self) -> None:
        entries = self.store.index()
        self._send_json(
            200,
            [{"id": e.id, "timestamp": e.timestamp, "label": e.label} for e in entries],
        )

    def _get_schema(self, name: str) -> None:
        if not name.endswith(".json"):
            name += ".schema.json"
        target = (_SCHEMA_DIR / name).resolve()
        if _SCHEMA_DIR not in target.parents or not target.exists():
            raise UnknownSnapshotError(f"no schema named {name!r}")
        self._send_json(200, json.loads(target.read_text(encoding="utf-8")))

    def _post_snapshot(self) -> None:
        doc = self._read_json()
        if not isinstance(doc, dict):
            raise SchemaError("snapshot must be a JSON object", "$")
        try:
            snapshot_id = self.store.add(doc)
        except StoreError as exc:
            raise SchemaError(str(exc), "id") from None
        self._send_json(201, {"id": snapshot_id})

    def _post_score(self) -> None:
        warnings: list[str] = []
        snapshot = snapshot_from_doc(self._read_json(), warnings_sink=warnings)
        report = build_score_report(snapshot, extra_warnings=warnings)
        self._send_json(200, score_report_to_doc(report))

    def _post_project(self) -> None:
        p, q, actions, horizon, step, mode = projection_from_doc(self._read_json())
        bundle = project_series(p, q, actions, horizon, step, mode)
        self._send_json(200, _series_doc(bundle))

    def _post_optimize(self) -> None:
        problem = problem_from_doc(self._read_json())
        self._send_json(200, solution_to_doc(solve(problem)))

    def _post_classify(self) -> None:
        assets = inventory_from_doc(self._read_json())
        if not assets:
            raise SchemaError("inventory is empty", "assets")
        classified = classify_all(assets)
        derived = derive_technical_matrix(classified)
        ranking = rank_hndl(classified, top_n=len(classified))
        self._send_json(
            200,
            {
                "assets": [classified_to_doc(c) for c in classified],
                "matrix": [list(row) for row in derived.matrix.rows],
                "matrixWarnings": list(derived.warnings),
                "hndlRanking": [c.asset.id for c in ranking],
            },
        )

    # -- static UI ----------------------------------------------------------

    def _serve_static(self, path: str) -> None:
        if self.ui_dir is None:
            self._send_error_json(404, "no UI bundle configured; API lives under /api/")
            return
        rel = path.lstrip("/") or "index.html"
        target = (self.ui_dir / rel).resolve()
        if self.ui_dir.resolve() not in target.parents and target != self.ui_dir.resolve():
            self._send_error_json(404, "not found")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_error_json(404, "not found")
            return
        body = target.read_bytes()
        self.send_response(200)
        self.send_header(
            "Content-Type", _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        )
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def create_server(
    port: int,
    store: SnapshotStore,
    bind: str = "127.0.0.1",
    ui_dir: str | Path | None = None,
) -> ThreadingHTTPServer:
    """Bind the API server (raising OSError if the port is taken)."""
    handler = type(
        "BoundWorkbenchHandler",
        (WorkbenchHandler,),
        {"store": store, "ui_dir": Path(ui_dir) if ui_dir else None},
    )
    return ThreadingHTTPServer((bind, port), handler)


def serve_api(
    port: int,
    store: SnapshotStore,
    bind: str = "127.0.0.1",
    ui_dir: str | Path | None = None,
) -> None:
    """Run the API until interrupted."""
    server = create_server(port, store, bind=bind, ui_dir=ui_dir)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def run_in_thread(server: ThreadingHTTPServer) -> threading.Thread:
    """Start serve_forever on a daemon thread (test helper)."""
    thread = threading.Thread(
        target=lambda: server.serve_forever(poll_interval=0.05), daemon=True
    )
    thread.start()
    return thread
