"""Certificate parsing against the openssl-generated fixtures."""
from __future__ import annotations

from datetime import timezone

import pytest

from quasar_workbench.certificates import asset_from_certificate, parse_certificates
from quasar_workbench.errors import FormatError
from quasar_workbench.inventory import VulnerabilityClass, classify


def test_rsa2048_pem_fixture(fixtures_dir):
    """Fields frozen from the generator's own text dump (fixtures/certs/rsa2048.txt)."""
    result = parse_certificates(fixtures_dir / "certs" / "rsa2048.pem")
    assert len(result.records) == 1
    assert result.diagnostics == ()
    record = result.records[0]
    assert record.public_key_algorithm == "RSA"
    assert record.public_key_bits == 2048
    assert record.signature_algorithm == "RSA"
    assert "workbench-fixture" in record.subject
    assert "Example Corp" in record.subject
    assert record.subject == record.issuer  # self-signed
    assert record.not_before.tzinfo == timezone.utc
    assert record.not_before < record.not_after
    assert record.not_after.year == 2036
    assert record.chain_depth == 0


def test_rsa_fixture_classifies_shor_broken(fixtures_dir):
    result = parse_certificates(fixtures_dir / "certs" / "rsa2048.pem")
    asset = asset_from_certificate(result.records[0])
    classified = classify(asset)
    assert classified.vulnerability is VulnerabilityClass.SHOR_BROKEN
    assert asset.kind == "certificate"
    assert asset.key_bits == 2048


def test_truncated_fixture_one_record_one_diagnostic(fixtures_dir):
    result = parse_certificates(fixtures_dir / "certs" / "truncated.pem")
    assert len(result.records) == 1
    assert len(result.diagnostics) == 1
    assert "truncated" in result.diagnostics[0]


def test_empty_input_warns_not_fails():
    result = parse_certificates(b"")
    assert result.records == ()
    assert len(result.diagnostics) == 1
    assert "empty" in result.diagnostics[0]


def test_der_roundtrip(fixtures_dir):
    pem = (fixtures_dir / "certs" / "rsa2048.pem").read_bytes()
    import base64
    import re

    body = re.search(
        rb"-----BEGIN CERTIFICATE-----(.*?)-----END CERTIFICATE-----", pem, re.DOTALL
    ).group(1)
    der = base64.b64decode(body)
    result = parse_certificates(der)
    assert len(result.records) == 1
    assert result.records[0].public_key_bits == 2048

    # two concatenated DER certs parse as a depth-ordered chain
    double = parse_certificates(der + der)
    assert len(double.records) == 2
    assert [r.chain_depth for r in double.records] == [0, 1]


def test_garbage_input_raises_format_error_with_offset():
    with pytest.raises(FormatError) as exc_info:
        parse_certificates(b"\x01\x02\x03 this is not a certificate")
    assert exc_info.value.offset == 0


def test_corrupt_pem_block_is_a_diagnostic(fixtures_dir):
    good = (fixtures_dir / "certs" / "rsa2048.pem").read_text()
    corrupted = good.replace("MIID", "!!!!", 1)
    result = parse_certificates(corrupted.encode())
    assert result.records == ()
    assert len(result.diagnostics) == 1


def test_missing_file_is_a_format_error(tmp_path):
    with pytest.raises(FormatError):
        parse_certificates(tmp_path / "no-such-file.pem")


def test_ecdsa_identity_parses(tmp_path):
    from tests.tls_responder import write_ecdsa_identity

    cert_path, _ = write_ecdsa_identity(tmp_path)
    result = parse_certificates(cert_path)
    assert len(result.records) == 1
    record = result.records[0]
    assert record.public_key_algorithm == "ECDSA"
    assert record.public_key_bits == 256
    assert record.signature_algorithm == "ECDSA"
    classified = classify(asset_from_certificate(record))
    assert classified.vulnerability is VulnerabilityClass.SHOR_BROKEN
