"""TLS endpoint probing for the network-protocol inventory.

Performs a single TLS handshake per endpoint (never retrying implicitly) and
records the negotiated protocol version, the key-exchange family and the leaf
certificate's algorithms as a protocol-endpoint asset. Network access is
opt-in at the CLI (`--allow-network`); the library itself only ever connects
when called.
"""
from __future__ import annotations

import socket
import ssl
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .certificates import parse_certificates
from .errors import InputError, ProbeError
from .inventory import CryptoAsset

DEFAULT_TIMEOUT = 10.0
DEFAULT_MAX_IN_FLIGHT = 8

# TLS 1.3 key establishment is always ephemeral (EC)DH; earlier versions
# encode the key exchange in the cipher suite name.
_KX_PREFIXES = (
    ("ECDHE", "ECDHE"),
    ("ECDH", "ECDH"),
    ("DHE", "DHE"),
    ("EDH", "DHE"),
    ("DH", "DH"),
    ("RSA", "RSA"),
)


def _key_exchange_from_cipher(cipher_name: str, protocol: str) -> str:
    if protocol == "TLS1.3":
        return "ECDHE"
    upper = cipher_name.upper().replace("_", "-")
    for needle, family in _KX_PREFIXES:
        if upper.startswith(needle + "-") or f"-{needle}-" in upper:
            return family
    return "RSA"  # classic RSA key transport suites carry no kx prefix


def _normalize_version(version: str | None) -> str:
    if not version:
        return "unknown"
    return version.upper().replace("TLSV", "TLS").replace(" ", "")


@dataclass(frozen=True)
class EndpointProbe:
    """Raw handshake facts, before being folded into a CryptoAsset."""

    host: str
    port: int
    protocol: str
    key_exchange: str
    cipher: str
    certificate_signature_algorithm: str | None
    certificate_public_key_algorithm: str | None
    certificate_public_key_bits: int | None


def probe_endpoint(host: str, port: int, timeout: float = DEFAULT_TIMEOUT) -> CryptoAsset:
    """One TLS handshake against host:port, captured as an inventory asset.

    The returned asset's algorithm is the negotiated key-exchange family and
    its protocol is the negotiated TLS version. Sensitivity/retention default
    to 0.5/0 (the probe cannot know them). Timeouts, refused connections and
    handshake failures raise ProbeError with the cause; nothing is retried.
    """
    if timeout <= 0.0:
        raise InputError(f"timeout must be positive, got {timeout!r}")
    if not (0 < port < 65536):
        raise InputError(f"port {port!r} out of range")

    context = ssl.create_default_context()
    # inventory probe: we want handshake facts even from self-signed endpoints
    context.check_hostname = False
    context.verify_mode = ssl.CERT_NONE

    try:
        with socket.create_connection((host, port), timeout=timeout) as raw:
            with context.wrap_socket(raw, server_hostname=host) as tls:
                version = _normalize_version(tls.version())
                cipher = (tls.cipher() or ("unknown", "", 0))[0]
                der = tls.getpeercert(binary_form=True)
    except ConnectionRefusedError as exc:
        raise ProbeError(f"connection refused by {host}:{port}: {exc}") from None
    except (socket.timeout, TimeoutError) as exc:
        raise ProbeError(f"timeout connecting to {host}:{port}: {exc}") from None
    except ssl.SSLError as exc:
        raise ProbeError(f"TLS handshake with {host}:{port} failed: {exc}") from None
    except OSError as exc:
        raise ProbeError(f"cannot reach {host}:{port}: {exc}") from None

    kx = _key_exchange_from_cipher(cipher, version)
    sig_algo = pk_algo = None
    pk_bits = None
    not_after = None
    if der:
        result = parse_certificates(der)
        if result.records:
            leaf = result.records[0]
            sig_algo = leaf.signature_algorithm
            pk_algo = leaf.public_key_algorithm
            pk_bits = leaf.public_key_bits
            not_after = leaf.not_after

    detail = f"{version} {cipher}"
    if sig_algo or pk_algo:
        detail += f"; leaf {pk_algo or '?'} key, {sig_algo or '?'} signature"
    return CryptoAsset(
        id=f"{host}:{port}",
        name=f"TLS endpoint {host}:{port} ({detail})",
        kind="protocol-endpoint",
        algorithm=kx,
        sensitivity=0.5,
        retention_years=0.0,
        key_bits=pk_bits,
        protocol=version,
        not_after=not_after,
    )


def probe_many(
    endpoints: list[tuple[str, int]],
    timeout: float = DEFAULT_TIMEOUT,
    max_in_flight: int = DEFAULT_MAX_IN_FLIGHT,
) -> tuple[list[CryptoAsset], list[str]]:
    """Probe several endpoints concurrently with a bounded in-flight limit.

    Results merge deterministically in (host, port) order regardless of
    completion order; failures come back as messages, not exceptions.
    """
    if max_in_flight < 1:
        raise InputError("max_in_flight must be >= 1")
    ordered = sorted(set(endpoints))
    assets: list[CryptoAsset] = []
    failures: list[str] = []
    with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
        futures = [pool.submit(probe_endpoint, host, port, timeout) for host, port in ordered]
        for (host, port), future in zip(ordered, futures):
            try:
                assets.append(future.result())
            except (ProbeError, InputError) as exc:
                failures.append(f"{host}:{port}: {exc}")
    return assets, failures
