"""Certificate container parsing for PKI inventory.

Reads PEM bundles (BEGIN/END CERTIFICATE blocks) or raw DER (single or
concatenated certificates) and extracts the fields the inventory needs.
Unparseable entries become diagnostics, not failures; only wholly unreadable
input raises, with the first offending byte offset.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

from cryptography import x509
from cryptography.hazmat.primitives.asymmetric import dsa, ec, ed448, ed25519, rsa

from .errors import FormatError
from .inventory import CryptoAsset

_PEM_BLOCK_RE = re.compile(
    rb"-----BEGIN CERTIFICATE-----.*?-----END CERTIFICATE-----",
    re.DOTALL,
)
_PEM_MARKER = b"-----BEGIN CERTIFICATE-----"


@dataclass(frozen=True)
class CertificateRecord:
    subject: str
    issuer: str
    signature_algorithm: str
    public_key_algorithm: str
    public_key_bits: int
    not_before: datetime
    not_after: datetime
    chain_depth: int  # position within the presented container, 0 first


@dataclass(frozen=True)
class CertificateParseResult:
    records: tuple[CertificateRecord, ...]
    diagnostics: tuple[str, ...]


def _public_key_info(cert: x509.Certificate) -> tuple[str, int]:
    key = cert.public_key()
    if isinstance(key, rsa.RSAPublicKey):
        return "RSA", key.key_size
    if isinstance(key, ec.EllipticCurvePublicKey):
        return "ECDSA", key.curve.key_size
    if isinstance(key, dsa.DSAPublicKey):
        return "DSA", key.key_size
    if isinstance(key, ed25519.Ed25519PublicKey):
        return "EdDSA", 256
    if isinstance(key, ed448.Ed448PublicKey):
        return "EdDSA", 448
    name = type(key).__name__.replace("PublicKey", "")
    size = getattr(key, "key_size", 0)
    return name, int(size)


_SIGNATURE_FAMILIES = (
    ("RSA", "RSA"),
    ("ECDSA", "ECDSA"),
    ("ED25519", "EdDSA"),
    ("ED448", "EdDSA"),
    ("DSA", "DSA"),
)


def _signature_algorithm(cert: x509.Certificate) -> str:
    oid_name = cert.signature_algorithm_oid._name or cert.signature_algorithm_oid.dotted_string
    upper = oid_name.upper()
    for needle, family in _SIGNATURE_FAMILIES:
        if needle in upper:
            return family
    return oid_name


def _record_from(cert: x509.Certificate, depth: int) -> CertificateRecord:
    pk_algo, pk_bits = _public_key_info(cert)
    return CertificateRecord(
        subject=cert.subject.rfc4514_string(),
        issuer=cert.issuer.rfc4514_string(),
        signature_algorithm=_signature_algorithm(cert),
        public_key_algorithm=pk_algo,
        public_key_bits=pk_bits,
        not_before=cert.not_valid_before_utc,
        not_after=cert.not_valid_after_utc,
        chain_depth=depth,
    )


def _der_lengths(data: bytes, offset: int) -> int | None:
    """Total TLV length of the DER element at offset, or None if malformed."""
    if offset + 2 > len(data) or data[offset] != 0x30:
        return None
    first = data[offset + 1]
    if first < 0x80:
        return 2 + first
    n = first & 0x7F
    if n == 0 or offset + 2 + n > len(data):
        return None
    return 2 + n + int.from_bytes(data[offset + 2 : offset + 2 + n], "big")


def parse_certificates(source: bytes | str | Path) -> CertificateParseResult:
    """Parse every certificate found in a PEM or DER container.

    Accepts raw bytes or a file path. Truncated or corrupt entries are
    reported as diagnostics alongside the successfully parsed records; an
    empty input yields no records plus a zero-certificates warning.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise FormatError(f"cannot read {path}: {exc}", offset=0) from None
    else:
        data = source

    records: list[CertificateRecord] = []
    diagnostics: list[str] = []

    if not data.strip():
        return CertificateParseResult(
            records=(),
            diagnostics=("no certificates found in empty input",),
        )

    if _PEM_MARKER in data:
        depth = 0
        matched_any = False
        for m in _PEM_BLOCK_RE.finditer(data):
            matched_any = True
            try:
                records.append(_record_from(x509.load_pem_x509_certificate(m.group(0)), depth))
            except ValueError as exc:
                diagnostics.append(
                    f"unparseable certificate block at offset {m.start()}: {exc}"
                )
            depth += 1
        # a BEGIN without its END never matches the block regex
        dangling = data.rfind(_PEM_MARKER)
        if dangling != -1 and (not matched_any or dangling > data.rfind(b"-----END CERTIFICATE-----")):
            diagnostics.append(
                f"truncated certificate block at offset {dangling}: missing END line"
            )
        if not records and not diagnostics:
            raise FormatError("no certificate blocks found", offset=0)
        return CertificateParseResult(tuple(records), tuple(diagnostics))

    # DER: one or more concatenated TLV-encoded certificates
    offset = 0
    depth = 0
    while offset < len(data):
        total = _der_lengths(data, offset)
        if total is None or offset + total > len(data):
            if depth == 0:
                raise FormatError(
                    f"input is neither PEM nor DER (offset {offset})", offset=offset
                )
            diagnostics.append(f"truncated DER element at offset {offset}")
            break
        try:
            records.append(
                _record_from(x509.load_der_x509_certificate(data[offset : offset + total]), depth)
            )
        except ValueError as exc:
            diagnostics.append(f"unparseable DER certificate at offset {offset}: {exc}")
        offset += total
        depth += 1
    return CertificateParseResult(tuple(records), tuple(diagnostics))


def asset_from_certificate(record: CertificateRecord, index: int = 0) -> CryptoAsset:
    """Lift a parsed certificate into an inventory asset (defaults documented).

    Sensitivity defaults to 0.5 and retention to 0 years; both are scoring
    inputs the certificate itself cannot know, so callers refine them.
    """
    return CryptoAsset(
        id=f"cert-{index}-{record.subject or 'unknown'}",
        name=record.subject or f"certificate #{index}",
        kind="certificate",
        algorithm=record.public_key_algorithm,
        sensitivity=0.5,
        retention_years=0.0,
        key_bits=record.public_key_bits or None,
        not_after=record.not_after,
    )
