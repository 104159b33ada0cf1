"""Cryptographic asset inventory: classification, prioritization, derivation.

Classifies inventoried cryptographic usages by quantum vulnerability using a
fixed rule table, ranks harvest-now-decrypt-later (HNDL) exposure, and
derives the 3x3 technical readiness matrix from share counts over the
classified inventory.

Classification is a deterministic total function: anything the rule table
does not match is Unknown, which deliberately scores riskier than
Grover-weakened so unrecognized algorithms never look safe.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import datetime, timezone

from .assessment import TechnicalReadinessMatrix
from .errors import InputError

ASSET_KINDS = (
    "key-exchange",
    "signature",
    "symmetric-cipher",
    "hash",
    "certificate",
    "protocol-endpoint",
)


class VulnerabilityClass(enum.Enum):
    SHOR_BROKEN = "ShorBroken"
    GROVER_WEAKENED = "GroverWeakened"
    CLASSICALLY_BROKEN = "ClassicallyBroken"
    QUANTUM_RESISTANT = "QuantumResistant"
    POST_QUANTUM = "PostQuantum"
    UNKNOWN = "Unknown"


# HNDL priority = v * sensitivity * min(1, retentionYears / horizon).
# Constants kept together so the policy is transparent and tunable.
HNDL_VULNERABILITY_WEIGHT = {
    VulnerabilityClass.SHOR_BROKEN: 1.0,
    VulnerabilityClass.CLASSICALLY_BROKEN: 1.0,
    VulnerabilityClass.GROVER_WEAKENED: 0.4,
    VulnerabilityClass.UNKNOWN: 0.6,
    VulnerabilityClass.QUANTUM_RESISTANT: 0.0,
    VulnerabilityClass.POST_QUANTUM: 0.0,
}
HNDL_HORIZON_YEARS = 10.0


def _canonical(algorithm: str) -> str:
    """Case/punctuation-insensitive canonical form of an algorithm name."""
    return "".join(ch for ch in algorithm.upper() if ch.isalnum())


# Alias groups map onto one canonical member each.
_ALIASES = {
    "KYBER": "MLKEM",
    "DILITHIUM": "MLDSA",
    "SPHINCS": "SLHDSA",  # SPHINCS+ loses its '+' under canonicalization
    "ECDHE": "ECDH",  # ephemeral variants share the underlying problem
    "DHE": "DH",
}

_SHOR_BROKEN = {"RSA", "DSA", "DH", "ECDH", "ECDSA", "EDDSA", "ECC"}
_CLASSICALLY_BROKEN = {"RAINBOW", "SIKE"}
_GROVER_WEAKENED_FIXED = {"SHA256", "CHACHA20", "3DES"}
_QUANTUM_RESISTANT_FIXED = {"SHA384", "SHA512"}
_POST_QUANTUM = {"MLKEM", "MLDSA", "SLHDSA", "XMSS", "MCELIECE", "FRODOKEM"}


@dataclass(frozen=True)
class CryptoAsset:
    """One inventoried cryptographic usage."""

    id: str
    name: str
    kind: str
    algorithm: str
    sensitivity: float
    retention_years: float
    key_bits: int | None = None
    protocol: str | None = None
    crypto_agile: bool = False
    pqc_alternative_identified: bool = False
    pilot_tested: bool = False
    hybrid_deployed: bool = False
    depends_on: tuple[str, ...] = ()
    not_after: datetime | None = None

    def __post_init__(self):
        if not self.id:
            raise InputError("asset id must be nonempty")
        if self.kind not in ASSET_KINDS:
            raise InputError(f"asset {self.id!r} kind {self.kind!r} not one of {ASSET_KINDS}")
        if not (0.0 <= self.sensitivity <= 1.0):
            raise InputError(f"asset {self.id!r} sensitivity outside [0, 1]")
        if self.retention_years < 0.0:
            raise InputError(f"asset {self.id!r} retentionYears must be nonnegative")
        if self.key_bits is not None and self.key_bits <= 0:
            raise InputError(f"asset {self.id!r} keyBits must be positive")
        object.__setattr__(self, "depends_on", tuple(self.depends_on))


@dataclass(frozen=True)
class ClassifiedAsset:
    asset: CryptoAsset
    vulnerability: VulnerabilityClass
    nist_level_equivalent: int | None
    hndl_priority: float
    rationale: str


def classify(asset: CryptoAsset) -> ClassifiedAsset:
    """Apply the vulnerability rule table to one asset. Total: never raises."""
    name = _canonical(asset.algorithm)
    name = _ALIASES.get(name, name)

    if name in _SHOR_BROKEN:
        vuln, rule = VulnerabilityClass.SHOR_BROKEN, f"shor-broken:{name}"
    elif name in _CLASSICALLY_BROKEN:
        vuln, rule = VulnerabilityClass.CLASSICALLY_BROKEN, f"classically-broken:{name}"
    elif name in _POST_QUANTUM:
        vuln, rule = VulnerabilityClass.POST_QUANTUM, f"post-quantum:{name}"
    elif name == "AES" and asset.key_bits is not None and asset.key_bits <= 128:
        vuln, rule = VulnerabilityClass.GROVER_WEAKENED, "grover-weakened:AES<=128"
    elif name == "AES" and asset.key_bits is not None and asset.key_bits >= 192:
        vuln, rule = VulnerabilityClass.QUANTUM_RESISTANT, "quantum-resistant:AES>=192"
    elif name in _GROVER_WEAKENED_FIXED:
        vuln, rule = VulnerabilityClass.GROVER_WEAKENED, f"grover-weakened:{name}"
    elif name in _QUANTUM_RESISTANT_FIXED or name.startswith("SHA3"):
        vuln, rule = VulnerabilityClass.QUANTUM_RESISTANT, f"quantum-resistant:{name}"
    else:
        vuln, rule = VulnerabilityClass.UNKNOWN, f"unknown:{name or 'EMPTY'}"

    nist = None
    if name == "AES" and asset.key_bits in (128, 192, 256):
        nist = {128: 1, 192: 3, 256: 5}[asset.key_bits]

    weight = HNDL_VULNERABILITY_WEIGHT[vuln]
    priority = weight * asset.sensitivity * min(
        1.0, asset.retention_years / HNDL_HORIZON_YEARS
    )
    return ClassifiedAsset(
        asset=asset,
        vulnerability=vuln,
        nist_level_equivalent=nist,
        hndl_priority=priority,
        rationale=rule,
    )


def classify_all(assets: list[CryptoAsset]) -> list[ClassifiedAsset]:
    seen: set[str] = set()
    for a in assets:
        if a.id in seen:
            raise InputError(f"duplicate asset id {a.id!r}")
        seen.add(a.id)
    return [classify(a) for a in assets]


def rank_hndl(inventory: list[ClassifiedAsset], top_n: int) -> list[ClassifiedAsset]:
    """Harvest-now-decrypt-later priority ranking, truncated to top_n.

    Descending priority; ties broken by retention years descending, then by
    id ascending.
    """
    if top_n < 1:
        raise InputError(f"topN must be >= 1, got {top_n!r}")
    ordered = sorted(
        inventory,
        key=lambda c: (-c.hndl_priority, -c.asset.retention_years, c.asset.id),
    )
    return ordered[:top_n]


def _normalize_protocol(protocol: str) -> str:
    return protocol.upper().replace(" ", "").replace("TLSV", "TLS")


def _share(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 0.0


@dataclass(frozen=True)
class DerivedMatrix:
    """Technical readiness matrix derived from an inventory, plus coverage notes."""

    matrix: TechnicalReadinessMatrix
    warnings: tuple[str, ...]


def derive_technical_matrix(
    inventory: list[ClassifiedAsset],
    reference_time: datetime | None = None,
) -> DerivedMatrix:
    """Share-count the classified inventory into the 3x3 technical matrix.

    Workbench cell conventions (a snapshot may always override the result
    with a hand-scored matrix):

    - cryptographic row: post-quantum-or-hybrid share of key-exchange assets;
      same for signature assets; quantum-resistant share of symmetric/hash
      assets.
    - infrastructure row: TLS1.3 share among protocol-bearing assets;
      crypto-agile share of all assets; share of certificates that are
      post-quantum or roll over within a year of reference_time.
    - algorithm row: shares of all assets with a PQC alternative identified,
      pilot tested, and hybrid deployed.

    Empty denominators yield a 0 cell plus a coverage warning. Hybrid
    deployments count as quantum-safe for the share counts.
    """
    if not inventory:
        raise InputError("cannot derive a matrix from an empty inventory")
    now = reference_time or datetime.now(timezone.utc)
    warnings: list[str] = []

    def safe(c: ClassifiedAsset) -> bool:
        return c.vulnerability is VulnerabilityClass.POST_QUANTUM or c.asset.hybrid_deployed

    kex = [c for c in inventory if c.asset.kind == "key-exchange"]
    sig = [c for c in inventory if c.asset.kind == "signature"]
    sym = [c for c in inventory if c.asset.kind in ("symmetric-cipher", "hash")]
    protocol_bearing = [c for c in inventory if c.asset.protocol]
    certs = [c for c in inventory if c.asset.kind == "certificate"]
    total = len(inventory)

    def cert_ready(c: ClassifiedAsset) -> bool:
        if c.vulnerability is VulnerabilityClass.POST_QUANTUM:
            return True
        if c.asset.not_after is None:
            return False
        remaining = (c.asset.not_after - now).total_seconds()
        return remaining < 365.25 * 24 * 3600

    for group, label in (
        (kex, "key-exchange assets"),
        (sig, "signature assets"),
        (sym, "symmetric/hash assets"),
        (protocol_bearing, "protocol-bearing assets"),
        (certs, "certificate assets"),
    ):
        if not group:
            warnings.append(f"no {label}; corresponding cell reported as 0")

    rows = (
        (
            _share(sum(1 for c in kex if safe(c)), len(kex)),
            _share(sum(1 for c in sig if safe(c)), len(sig)),
            _share(
                sum(1 for c in sym if c.vulnerability is VulnerabilityClass.QUANTUM_RESISTANT),
                len(sym),
            ),
        ),
        (
            _share(
                sum(
                    1
                    for c in protocol_bearing
                    if _normalize_protocol(c.asset.protocol or "") == "TLS1.3"
                ),
                len(protocol_bearing),
            ),
            _share(sum(1 for c in inventory if c.asset.crypto_agile), total),
            _share(sum(1 for c in certs if cert_ready(c)), len(certs)),
        ),
        (
            _share(sum(1 for c in inventory if c.asset.pqc_alternative_identified), total),
            _share(sum(1 for c in inventory if c.asset.pilot_tested), total),
            _share(sum(1 for c in inventory if c.asset.hybrid_deployed), total),
        ),
    )
    return DerivedMatrix(
        matrix=TechnicalReadinessMatrix(rows=rows),
        warnings=tuple(warnings),
    )
