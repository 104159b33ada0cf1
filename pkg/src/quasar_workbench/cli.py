"""Command-line surface of the workbench.

Subcommands: assess, gap, risk, project, optimize, inventory
(classify/scan-certs/probe/matrix), snapshot (add/list/show), report, serve.
Exit codes: 0 success, 1 input or validation error, 2 internal error.

The default snapshot store is taken from $QUASAR_STORE, falling back to
./quasar-store. Set $QUASAR_NOW (RFC-3339) to pin the clock used for
assigned timestamps, which keeps command output reproducible.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from .api import serve_api
from .errors import InputError, WorkbenchError
from .inventory import classify_all, derive_technical_matrix, rank_hndl
from .optimizer import solve
from .certificates import asset_from_certificate, parse_certificates
from .probe import probe_many
from .report import build_score_report, render_report, score_report_to_doc
from .serialization import (
    classified_to_doc,
    load_inventory,
    load_json,
    parse_timestamp,
    problem_from_doc,
    snapshot_from_doc,
    solution_to_doc,
)
from .store import SnapshotStore
from .trajectory import (
    ActionSet,
    EMPTY_ACTIONS,
    ProgressParams,
    TrajectoryParams,
    project_series,
    series_to_csv,
)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _default_store() -> str:
    return os.environ.get("QUASAR_STORE", "quasar-store")


def _store_clock():
    pinned = os.environ.get("QUASAR_NOW")
    if pinned:
        fixed = parse_timestamp(pinned, "QUASAR_NOW")
        return lambda: fixed
    return lambda: datetime.now(timezone.utc)


def _open_store(path: str) -> SnapshotStore:
    return SnapshotStore(path, clock=_store_clock())


def _load_snapshot(path: str, warnings_sink: list[str]):
    return snapshot_from_doc(load_json(path), warnings_sink=warnings_sink)


def _print_score_report(report) -> None:
    print(f"Snapshot: {report.snapshot_id}" + (f" ({report.label})" if report.label else ""))
    print(f"PQR: {_fmt(report.pqr)} (normalized {_fmt(report.pqr_normalized)})")
    print(
        f"PI: {_fmt(report.pi.literal)} literal (1/n prefactor), "
        f"{_fmt(report.pi.rescaled)} rescaled (n={report.pi.n})"
    )
    print(f"RS: {_fmt(report.rs)}")
    print("Current state by area: " + ", ".join(_fmt(c) for c in report.current))
    _print_gaps(report)
    _print_risk(report)
    if report.warnings:
        print("Warnings:")
        for w in report.warnings:
            print(f"  - {w}")


def _print_gaps(report) -> None:
    if report.gaps is None:
        print("Gaps: no target state recorded")
        return
    print("Gaps (ranked by deficit):")
    for rank, area in enumerate(report.gaps.ranking, start=1):
        print(f"  {rank}. area {area + 1}: gap {_fmt(report.gaps.gaps[area])}")


def _print_risk(report) -> None:
    if report.risk is None:
        print("Risk vector: risk matrix absent")
    else:
        print("Risk vector: " + ", ".join(_fmt(r) for r in report.risk))


# -- subcommand bodies -------------------------------------------------------

def _cmd_assess(args) -> int:
    warnings: list[str] = []
    snapshot = _load_snapshot(args.snapshot, warnings)
    report = build_score_report(snapshot, extra_warnings=warnings)
    if args.json:
        print(json.dumps(score_report_to_doc(report), indent=2))
    else:
        _print_score_report(report)
    return 0


def _cmd_gap(args) -> int:
    warnings: list[str] = []
    snapshot = _load_snapshot(args.snapshot, warnings)
    report = build_score_report(snapshot, extra_warnings=warnings)
    _print_gaps(report)
    return 0


def _cmd_risk(args) -> int:
    warnings: list[str] = []
    snapshot = _load_snapshot(args.snapshot, warnings)
    report = build_score_report(snapshot, extra_warnings=warnings)
    _print_risk(report)
    return 0


def _cmd_project(args) -> int:
    p = TrajectoryParams(alpha=args.alpha, beta=args.beta, lam=args.lam)
    q = ProgressParams(i0=args.i0, i_f=args.i_final, k=args.k)
    actions = EMPTY_ACTIONS
    if args.actions:
        doc = load_json(args.actions)
        if not isinstance(doc, list):
            raise InputError("actions file must be a JSON array of {name, impact, horizon}")
        actions = ActionSet.of(
            (item["name"], float(item["impact"]), item["horizon"]) for item in doc
        )
    bundle = project_series(p, q, actions, args.horizon, args.step, args.lt_mode)
    csv_text = series_to_csv(bundle)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
        print(f"wrote {len(bundle.times)} rows to {args.out}")
    else:
        sys.stdout.write(csv_text)
    return 0


def _cmd_optimize(args) -> int:
    doc = load_json(args.problem)
    if args.sweep_t:
        start, stop, step = args.sweep_t
        if step <= 0 or stop < start:
            raise InputError("--sweep-t needs start <= stop and a positive step")
        results = []
        t = start
        while t <= stop + 1e-12:
            sweep_doc = dict(doc)
            sweep_doc["t"] = t
            solution = solve(problem_from_doc(sweep_doc))
            results.append({"t": t, "solution": solution_to_doc(solution)})
            t += step
        print(json.dumps(results, indent=2))
        return 0
    solution = solve(problem_from_doc(doc))
    print(json.dumps(solution_to_doc(solution), indent=2))
    return 0


def _cmd_inventory_classify(args) -> int:
    assets = load_inventory(args.file)
    classified = classify_all(assets)
    print(json.dumps([classified_to_doc(c) for c in classified], indent=2))
    return 0


def _cmd_inventory_matrix(args) -> int:
    assets = load_inventory(args.file)
    derived = derive_technical_matrix(classify_all(assets))
    doc = {
        "matrix": [list(row) for row in derived.matrix.rows],
        "rows": list(derived.matrix.ROW_LABELS),
        "warnings": list(derived.warnings),
    }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_inventory_scan_certs(args) -> int:
    root = Path(args.path)
    files: list[Path]
    if root.is_dir():
        files = sorted(
            p for p in root.rglob("*") if p.suffix.lower() in (".pem", ".crt", ".cer", ".der")
        )
    else:
        files = [root]
    output = []
    for path in files:
        result = parse_certificates(path)
        for i, record in enumerate(result.records):
            asset = asset_from_certificate(record, index=i)
            output.append(
                {
                    "file": str(path),
                    "subject": record.subject,
                    "issuer": record.issuer,
                    "signatureAlgorithm": record.signature_algorithm,
                    "publicKeyAlgorithm": record.public_key_algorithm,
                    "publicKeyBits": record.public_key_bits,
                    "notBefore": record.not_before.isoformat(),
                    "notAfter": record.not_after.isoformat(),
                    "chainDepth": record.chain_depth,
                    "classified": classified_to_doc(classify_all([asset])[0]),
                }
            )
        for diag in result.diagnostics:
            print(f"warning: {path}: {diag}", file=sys.stderr)
    print(json.dumps(output, indent=2))
    return 0


def _cmd_inventory_probe(args) -> int:
    if not args.allow_network:
        raise InputError("network probing requires the explicit --allow-network flag")
    endpoints = []
    for spec in args.endpoint:
        host, sep, port_text = spec.rpartition(":")
        if not sep or not host:
            raise InputError(f"endpoint {spec!r} must be host:port")
        try:
            port = int(port_text)
        except ValueError:
            raise InputError(f"endpoint {spec!r} has a non-numeric port") from None
        endpoints.append((host, port))
    assets, failures = probe_many(
        endpoints, timeout=args.timeout, max_in_flight=args.max_in_flight
    )
    classified = classify_all(assets)
    print(json.dumps([classified_to_doc(c) for c in classified], indent=2))
    for failure in failures:
        print(f"probe failed: {failure}", file=sys.stderr)
    return 0 if not failures else 1


def _cmd_snapshot_add(args) -> int:
    store = _open_store(args.store)
    doc = load_json(args.file)
    snapshot_id = store.add(doc)
    print(snapshot_id)
    return 0


def _cmd_snapshot_list(args) -> int:
    store = _open_store(args.store)
    for entry in store.index():
        print(f"{entry.id}\t{entry.timestamp}\t{entry.label}")
    return 0


def _cmd_snapshot_show(args) -> int:
    store = _open_store(args.store)
    print(json.dumps(store.get_doc(args.id), indent=2, sort_keys=True))
    return 0


def _cmd_report(args) -> int:
    store = _open_store(args.store)
    warnings: list[str] = []
    snapshot = snapshot_from_doc(store.get_doc(args.id), warnings_sink=warnings)
    report = build_score_report(snapshot, extra_warnings=warnings)
    inventory = None
    if args.inventory:
        inventory = classify_all(load_inventory(args.inventory))
    sys.stdout.write(render_report(snapshot, report, inventory))
    return 0


def _cmd_serve(args) -> int:
    store = _open_store(args.store)
    ui_dir = args.ui if args.ui and Path(args.ui).is_dir() else None
    try:
        print(f"serving on http://{args.bind}:{args.port}/ (store: {args.store})")
        serve_api(args.port, store, bind=args.bind, ui_dir=ui_dir)
    except OSError as exc:
        print(f"cannot bind {args.bind}:{args.port}: {exc}", file=sys.stderr)
        return 2
    return 0


# -- parser wiring -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quasar", description="Post-quantum readiness workbench")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add_store_flag(p):
        p.add_argument("--store", default=_default_store(), help="snapshot store directory")

    p = sub.add_parser("assess", help="score a snapshot file and print the report")
    p.add_argument("snapshot")
    p.add_argument("--json", action="store_true", help="emit the JSON score document")
    p.set_defaults(func=_cmd_assess)

    p = sub.add_parser("gap", help="gap analysis for a snapshot file")
    p.add_argument("snapshot")
    p.set_defaults(func=_cmd_gap)

    p = sub.add_parser("risk", help="aggregated risk vector for a snapshot file")
    p.add_argument("snapshot")
    p.set_defaults(func=_cmd_risk)

    p = sub.add_parser("project", help="emit the five-series transformation CSV")
    p.add_argument("--alpha", type=float, required=True, help="initial preparedness")
    p.add_argument("--beta", type=float, required=True, help="target preparedness")
    p.add_argument("--lambda", type=float, required=True, dest="lam", help="transformation rate")
    p.add_argument("--i0", type=float, default=0.0, help="initial implementation state")
    p.add_argument("--if", type=float, default=1.0, dest="i_final", help="final implementation state")
    p.add_argument("--k", type=float, default=1.0, help="implementation rate constant")
    p.add_argument("--horizon", type=float, required=True, help="end of the sampling grid")
    p.add_argument("--step", type=float, required=True, help="grid step")
    p.add_argument("--lt-mode", choices=("literal", "prose"), default="literal")
    p.add_argument("--actions", help="JSON file with [{name, impact, horizon}] entries")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("optimize", help="solve a resource-allocation problem file")
    p.add_argument("problem")
    p.add_argument(
        "--sweep-t",
        nargs=3,
        type=float,
        metavar=("START", "STOP", "STEP"),
        help="re-solve along a time grid, overriding the file's t per solve",
    )
    p.set_defaults(func=_cmd_optimize)

    inv = sub.add_parser("inventory", help="cryptographic inventory operations")
    inv_sub = inv.add_subparsers(dest="inventory_command", metavar="subcommand")

    p = inv_sub.add_parser("classify", help="classify an inventory file (JSON or CSV)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_inventory_classify)

    p = inv_sub.add_parser("matrix", help="derive the technical readiness matrix")
    p.add_argument("file")
    p.set_defaults(func=_cmd_inventory_matrix)

    p = inv_sub.add_parser("scan-certs", help="parse certificates from a file or directory")
    p.add_argument("path")
    p.set_defaults(func=_cmd_inventory_scan_certs)

    p = inv_sub.add_parser("probe", help="TLS-probe one or more host:port endpoints")
    p.add_argument("endpoint", nargs="+", help="host:port")
    p.add_argument("--allow-network", action="store_true", help="explicit network opt-in")
    p.add_argument("--timeout", type=float, default=10.0)
    p.add_argument("--max-in-flight", type=int, default=8)
    p.set_defaults(func=_cmd_inventory_probe)

    snap = sub.add_parser("snapshot", help="snapshot store operations")
    snap_sub = snap.add_subparsers(dest="snapshot_command", metavar="subcommand")

    p = snap_sub.add_parser("add", help="persist a snapshot file")
    p.add_argument("file")
    add_store_flag(p)
    p.set_defaults(func=_cmd_snapshot_add)

    p = snap_sub.add_parser("list", help="list stored snapshots")
    add_store_flag(p)
    p.set_defaults(func=_cmd_snapshot_list)

    p = snap_sub.add_parser("show", help="print one stored snapshot")
    p.add_argument("id")
    add_store_flag(p)
    p.set_defaults(func=_cmd_snapshot_show)

    p = sub.add_parser("report", help="render the markdown report for a stored snapshot")
    p.add_argument("id")
    add_store_flag(p)
    p.add_argument("--inventory", help="optional inventory file for the HNDL section")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", help="run the local HTTP API")
    p.add_argument("--port", type=int, required=True)
    add_store_flag(p)
    p.add_argument("--bind", default="127.0.0.1", help="bind address (loopback by default)")
    p.add_argument("--ui", help="directory of static UI files to serve at /")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # bad usage (1) or --help (0)
        return int(exc.code or 0)
    if not hasattr(args, "func"):
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - anything unexpected is exit 2
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
