"""Document formats for snapshots, problems, inventories and projections.

One self-describing JSON dialect is shared by the files on disk, the CLI and
the HTTP API: fixed camelCase field names, decimal numbers, RFC-3339 UTC
timestamps. JSON Schema files describing these documents ship under
docs/schema/. Validation failures raise SchemaError naming the offending
field so the API can answer 400 {error, field}.

Inventories are additionally accepted as CSV with a fixed header row.
"""
from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from .assessment import (
    AssessmentSnapshot,
    DomainScores,
    RiskMatrix,
    TechnicalReadinessMatrix,
    WeightVector,
)
from .errors import FormatError, SchemaError, WorkbenchError
from .inventory import ASSET_KINDS, ClassifiedAsset, CryptoAsset
from .optimizer import OptimizationProblem, Solution
from .trajectory import ActionSet, ProgressParams, TrajectoryParams

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)

INVENTORY_CSV_COLUMNS = (
    "id",
    "name",
    "kind",
    "algorithm",
    "keyBits",
    "protocol",
    "sensitivity",
    "retentionYears",
    "cryptoAgile",
    "pqcAlternativeIdentified",
    "pilotTested",
    "hybridDeployed",
)
_CSV_OPTIONAL_COLUMNS = ("dependsOn", "notAfter")


def parse_timestamp(text: str, field: str) -> datetime:
    try:
        dt = datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError:
        raise SchemaError(f"{field}: not an RFC-3339 timestamp: {text!r}", field) from None
    if dt.tzinfo is None:
        raise SchemaError(f"{field}: timestamp must carry a UTC offset", field)
    return dt.astimezone(timezone.utc)


def format_timestamp(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {p}: {exc}", offset=0) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{p} is not valid JSON: {exc.msg}", offset=exc.pos) from None


def _require(doc: dict, field: str, kind: type | tuple[type, ...], path: str = ""):
    full = f"{path}{field}"
    if field not in doc:
        raise SchemaError(f"missing required field {full!r}", full)
    value = doc[field]
    if not isinstance(value, kind) or isinstance(value, bool) and kind in (int, float):
        raise SchemaError(f"field {full!r} has the wrong type", full)
    return value


def _number(doc: dict, field: str, path: str = "") -> float:
    full = f"{path}{field}"
    value = doc.get(field)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"field {full!r} must be a number", full)
    return float(value)


def _number_list(value: Any, field: str) -> list[float]:
    if not isinstance(value, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        raise SchemaError(f"field {field!r} must be a list of numbers", field)
    return [float(v) for v in value]


def _wrap(field: str, fn, *args, **kwargs):
    """Run a constructor, converting any workbench error into a SchemaError."""
    try:
        return fn(*args, **kwargs)
    except SchemaError:
        raise
    except WorkbenchError as exc:
        raise SchemaError(f"{field}: {exc}", field) from None


# ---------------------------------------------------------------------------
# Snapshots
# ---------------------------------------------------------------------------

def snapshot_from_doc(
    doc: Any,
    *,
    warnings_sink: list[str] | None = None,
    default_id: str = "(unsaved)",
    default_timestamp: datetime = EPOCH,
) -> AssessmentSnapshot:
    if not isinstance(doc, dict):
        raise SchemaError("snapshot document must be a JSON object", "$")
    scores_doc = _require(doc, "domainScores", dict)
    scores = _wrap(
        "domainScores",
        DomainScores,
        technical=_number_list(scores_doc.get("technical"), "domainScores.technical"),
        security=_number_list(scores_doc.get("security"), "domainScores.security"),
        operational=_number_list(scores_doc.get("operational"), "domainScores.operational"),
    )
    weights = _wrap(
        "domainWeights",
        WeightVector.from_values,
        _number_list(_require(doc, "domainWeights", list), "domainWeights"),
        warnings_sink=warnings_sink,
    )

    per_domain = None
    if doc.get("perDomainWeights") is not None:
        pd = doc["perDomainWeights"]
        if not isinstance(pd, dict):
            raise SchemaError("perDomainWeights must be an object", "perDomainWeights")
        per_domain = tuple(
            _wrap(
                f"perDomainWeights.{domain}",
                WeightVector.from_values,
                _number_list(pd.get(domain), f"perDomainWeights.{domain}"),
                warnings_sink=warnings_sink,
            )
            for domain in ("technical", "security", "operational")
        )

    technical_matrix = None
    if doc.get("technicalMatrix") is not None:
        rows = doc["technicalMatrix"]
        if not isinstance(rows, list) or len(rows) != 3:
            raise SchemaError("technicalMatrix must be a 3x3 array", "technicalMatrix")
        technical_matrix = _wrap(
            "technicalMatrix",
            TechnicalReadinessMatrix,
            rows=tuple(
                tuple(_number_list(row, f"technicalMatrix[{i}]")) for i, row in enumerate(rows)
            ),
        )

    risk_matrix = None
    if doc.get("riskMatrix") is not None:
        rm = doc["riskMatrix"]
        if not isinstance(rm, dict):
            raise SchemaError("riskMatrix must be an object", "riskMatrix")
        entries = _require(rm, "entries", list, "riskMatrix.")
        if len(entries) != 3:
            raise SchemaError("riskMatrix.entries must be a 3x3 array", "riskMatrix.entries")
        risk_matrix = _wrap(
            "riskMatrix",
            RiskMatrix,
            entries=tuple(
                tuple(_number_list(row, f"riskMatrix.entries[{i}]"))
                for i, row in enumerate(entries)
            ),
            dimension_weights=_wrap(
                "riskMatrix.dimensionWeights",
                WeightVector.from_values,
                _number_list(
                    _require(rm, "dimensionWeights", list, "riskMatrix."),
                    "riskMatrix.dimensionWeights",
                ),
                warnings_sink=warnings_sink,
            ),
        )

    target_state = None
    if doc.get("targetState") is not None:
        target_state = tuple(_number_list(doc["targetState"], "targetState"))

    timestamp = default_timestamp
    if doc.get("timestamp") is not None:
        if not isinstance(doc["timestamp"], str):
            raise SchemaError("timestamp must be an RFC-3339 string", "timestamp")
        timestamp = parse_timestamp(doc["timestamp"], "timestamp")

    snapshot_id = doc.get("id", default_id)
    if not isinstance(snapshot_id, str) or not snapshot_id:
        raise SchemaError("id must be a nonempty string", "id")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SchemaError("label must be a string", "label")
    notes = doc.get("notes", "")
    if not isinstance(notes, str):
        raise SchemaError("notes must be a string", "notes")

    return _wrap(
        "snapshot",
        AssessmentSnapshot,
        id=snapshot_id,
        timestamp=timestamp,
        label=label,
        domain_scores=scores,
        domain_weights=weights,
        technical_matrix=technical_matrix,
        risk_matrix=risk_matrix,
        target_state=target_state,
        notes=notes,
        per_domain_weights=per_domain,
    )


def snapshot_to_doc(snapshot: AssessmentSnapshot) -> dict:
    doc: dict[str, Any] = {
        "id": snapshot.id,
        "timestamp": format_timestamp(snapshot.timestamp),
        "label": snapshot.label,
        "domainScores": {
            "technical": list(snapshot.domain_scores.technical),
            "security": list(snapshot.domain_scores.security),
            "operational": list(snapshot.domain_scores.operational),
        },
        "domainWeights": list(snapshot.domain_weights.weights),
        "notes": snapshot.notes,
    }
    if snapshot.per_domain_weights is not None:
        wt, ws, wo = snapshot.per_domain_weights
        doc["perDomainWeights"] = {
            "technical": list(wt.weights),
            "security": list(ws.weights),
            "operational": list(wo.weights),
        }
    if snapshot.technical_matrix is not None:
        doc["technicalMatrix"] = [list(row) for row in snapshot.technical_matrix.rows]
    if snapshot.risk_matrix is not None:
        doc["riskMatrix"] = {
            "entries": [list(row) for row in snapshot.risk_matrix.entries],
            "dimensionWeights": list(snapshot.risk_matrix.dimension_weights.weights),
        }
    if snapshot.target_state is not None:
        doc["targetState"] = list(snapshot.target_state)
    return doc


# ---------------------------------------------------------------------------
# Optimization problems
# ---------------------------------------------------------------------------

def problem_from_doc(doc: Any) -> OptimizationProblem:
    if not isinstance(doc, dict):
        raise SchemaError("problem document must be a JSON object", "$")
    raw_vars = _require(doc, "variables", list)
    variables = []
    for i, item in enumerate(raw_vars):
        path = f"variables[{i}]."
        if not isinstance(item, dict):
            raise SchemaError(f"variables[{i}] must be an object", f"variables[{i}]")
        name = _require(item, "name", str, path)
        variables.append((name, _number(item, "lo", path), _number(item, "hi", path)))

    def expr_list(field: str) -> list[str]:
        value = doc.get(field, [])
        if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
            raise SchemaError(f"field {field!r} must be a list of expression strings", field)
        return value

    objectives = expr_list("objectives")
    if not objectives:
        raise SchemaError("at least one objective is required", "objectives")
    t = _number(doc, "t") if "t" in doc else 0.0
    return _wrap(
        "problem",
        OptimizationProblem.from_strings,
        variables=variables,
        objectives=objectives,
        inequalities=expr_list("inequalities"),
        equalities=expr_list("equalities"),
        time_value=t,
    )


def solution_to_doc(solution: Solution) -> dict:
    return {
        "assignment": dict(solution.assignment),
        "objectiveValue": solution.objective_value,
        "maxInequalityViolation": solution.max_inequality_violation,
        "maxEqualityViolation": solution.max_equality_violation,
        "feasible": solution.feasible,
        "diagnostics": {
            "startsTried": solution.diagnostics.starts_tried,
            "iterations": solution.diagnostics.iterations,
            "penaltyAtExit": solution.diagnostics.penalty_at_exit,
        },
    }


# ---------------------------------------------------------------------------
# Inventories
# ---------------------------------------------------------------------------

def _asset_from_doc(doc: Any, path: str) -> CryptoAsset:
    if not isinstance(doc, dict):
        raise SchemaError(f"{path} must be an object", path)
    prefix = f"{path}."
    key_bits = None
    if doc.get("keyBits") is not None:
        kb = doc["keyBits"]
        if isinstance(kb, bool) or not isinstance(kb, int):
            raise SchemaError(f"{prefix}keyBits must be an integer", f"{prefix}keyBits")
        key_bits = kb
    protocol = doc.get("protocol")
    if protocol is not None and not isinstance(protocol, str):
        raise SchemaError(f"{prefix}protocol must be a string", f"{prefix}protocol")
    depends_on: tuple[str, ...] = ()
    if doc.get("dependsOn") is not None:
        dep = doc["dependsOn"]
        if not isinstance(dep, list) or not all(isinstance(d, str) for d in dep):
            raise SchemaError(f"{prefix}dependsOn must be a list of ids", f"{prefix}dependsOn")
        depends_on = tuple(dep)
    not_after = None
    if doc.get("notAfter") is not None:
        if not isinstance(doc["notAfter"], str):
            raise SchemaError(f"{prefix}notAfter must be a timestamp", f"{prefix}notAfter")
        not_after = parse_timestamp(doc["notAfter"], f"{prefix}notAfter")

    def flag(field: str) -> bool:
        value = doc.get(field, False)
        if not isinstance(value, bool):
            raise SchemaError(f"{prefix}{field} must be a boolean", f"{prefix}{field}")
        return value

    return _wrap(
        path,
        CryptoAsset,
        id=_require(doc, "id", str, prefix),
        name=_require(doc, "name", str, prefix),
        kind=_require(doc, "kind", str, prefix),
        algorithm=_require(doc, "algorithm", str, prefix),
        sensitivity=_number(doc, "sensitivity", prefix),
        retention_years=_number(doc, "retentionYears", prefix),
        key_bits=key_bits,
        protocol=protocol,
        crypto_agile=flag("cryptoAgile"),
        pqc_alternative_identified=flag("pqcAlternativeIdentified"),
        pilot_tested=flag("pilotTested"),
        hybrid_deployed=flag("hybridDeployed"),
        depends_on=depends_on,
        not_after=not_after,
    )


def inventory_from_doc(doc: Any) -> list[CryptoAsset]:
    """Accepts either a bare JSON array of assets or {"assets": [...]}."""
    if isinstance(doc, dict):
        items = _require(doc, "assets", list)
    elif isinstance(doc, list):
        items = doc
    else:
        raise SchemaError("inventory must be an array or an object with 'assets'", "$")
    return [_asset_from_doc(item, f"assets[{i}]") for i, item in enumerate(items)]


def inventory_from_csv(text: str) -> list[CryptoAsset]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty CSV inventory", "$") from None
    header = [h.strip() for h in header]
    expected = list(INVENTORY_CSV_COLUMNS)
    if header[: len(expected)] != expected or any(
        h not in _CSV_OPTIONAL_COLUMNS for h in header[len(expected) :]
    ):
        raise SchemaError(
            "CSV header must be " + ",".join(expected) + " (optionally dependsOn,notAfter)",
            "$header",
        )
    assets = []
    for line_no, row in enumerate(reader, start=2):
        if not row or all(cell.strip() == "" for cell in row):
            continue
        if len(row) != len(header):
            raise SchemaError(f"CSV line {line_no} has {len(row)} cells, expected {len(header)}", f"line {line_no}")
        record = dict(zip(header, (cell.strip() for cell in row)))
        path = f"line {line_no}"

        def boolean(field: str) -> bool:
            value = record.get(field, "false").lower()
            if value not in ("true", "false", ""):
                raise SchemaError(f"{path}: {field} must be true or false", f"{path}.{field}")
            return value == "true"

        def number(field: str) -> float:
            try:
                return float(record[field])
            except (KeyError, ValueError):
                raise SchemaError(f"{path}: {field} must be a number", f"{path}.{field}") from None

        doc: dict[str, Any] = {
            "id": record["id"],
            "name": record["name"],
            "kind": record["kind"],
            "algorithm": record["algorithm"],
            "sensitivity": number("sensitivity"),
            "retentionYears": number("retentionYears"),
            "cryptoAgile": boolean("cryptoAgile"),
            "pqcAlternativeIdentified": boolean("pqcAlternativeIdentified"),
            "pilotTested": boolean("pilotTested"),
            "hybridDeployed": boolean("hybridDeployed"),
        }
        if record.get("keyBits"):
            try:
                doc["keyBits"] = int(record["keyBits"])
            except ValueError:
                raise SchemaError(f"{path}: keyBits must be an integer", f"{path}.keyBits") from None
        if record.get("protocol"):
            doc["protocol"] = record["protocol"]
        if record.get("dependsOn"):
            doc["dependsOn"] = record["dependsOn"].split(";")
        if record.get("notAfter"):
            doc["notAfter"] = record["notAfter"]
        assets.append(_asset_from_doc(doc, path))
    return assets


def load_inventory(path: str | Path) -> list[CryptoAsset]:
    """Load an inventory file, dispatching on extension (.csv) else JSON."""
    p = Path(path)
    if p.suffix.lower() == ".csv":
        try:
            return inventory_from_csv(p.read_text(encoding="utf-8"))
        except OSError as exc:
            raise FormatError(f"cannot read {p}: {exc}", offset=0) from None
    return inventory_from_doc(load_json(p))


def asset_to_doc(asset: CryptoAsset) -> dict:
    doc: dict[str, Any] = {
        "id": asset.id,
        "name": asset.name,
        "kind": asset.kind,
        "algorithm": asset.algorithm,
        "sensitivity": asset.sensitivity,
        "retentionYears": asset.retention_years,
        "cryptoAgile": asset.crypto_agile,
        "pqcAlternativeIdentified": asset.pqc_alternative_identified,
        "pilotTested": asset.pilot_tested,
        "hybridDeployed": asset.hybrid_deployed,
    }
    if asset.key_bits is not None:
        doc["keyBits"] = asset.key_bits
    if asset.protocol is not None:
        doc["protocol"] = asset.protocol
    if asset.depends_on:
        doc["dependsOn"] = list(asset.depends_on)
    if asset.not_after is not None:
        doc["notAfter"] = format_timestamp(asset.not_after)
    return doc


def classified_to_doc(classified: ClassifiedAsset) -> dict:
    return {
        "asset": asset_to_doc(classified.asset),
        "vulnerability": classified.vulnerability.value,
        "nistLevelEquivalent": classified.nist_level_equivalent,
        "hndlPriority": classified.hndl_priority,
        "rationale": classified.rationale,
    }


# ---------------------------------------------------------------------------
# Projection requests
# ---------------------------------------------------------------------------

def projection_from_doc(doc: Any) -> tuple[TrajectoryParams, ProgressParams, ActionSet, float, float, str]:
    """Parse a projection request: trajectory+progress params, actions, grid."""
    if not isinstance(doc, dict):
        raise SchemaError("projection request must be a JSON object", "$")
    p = _wrap(
        "trajectory",
        TrajectoryParams,
        alpha=_number(doc, "alpha"),
        beta=_number(doc, "beta"),
        lam=_number(doc, "lambda"),
    )
    q = _wrap(
        "progress",
        ProgressParams,
        i0=_number(doc, "i0") if "i0" in doc else 0.0,
        i_f=_number(doc, "iF") if "iF" in doc else 1.0,
        k=_number(doc, "k") if "k" in doc else 1.0,
    )
    actions = []
    raw_actions = doc.get("actions", [])
    if not isinstance(raw_actions, list):
        raise SchemaError("actions must be a list", "actions")
    for i, item in enumerate(raw_actions):
        path = f"actions[{i}]."
        if not isinstance(item, dict):
            raise SchemaError(f"actions[{i}] must be an object", f"actions[{i}]")
        actions.append(
            (
                _require(item, "name", str, path),
                _number(item, "impact", path),
                _require(item, "horizon", str, path),
            )
        )
    action_set = _wrap("actions", ActionSet.of, actions)
    horizon = _number(doc, "horizon")
    step = _number(doc, "step") if "step" in doc else horizon / 20.0
    mode = doc.get("ltMode", "literal")
    if mode not in ("literal", "prose"):
        raise SchemaError("ltMode must be 'literal' or 'prose'", "ltMode")
    return p, q, action_set, horizon, step, mode
