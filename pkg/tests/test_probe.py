"""TLS endpoint probing against the bundled loopback responder."""
from __future__ import annotations

import socket

import pytest

from quasar_workbench.errors import InputError, ProbeError
from quasar_workbench.inventory import VulnerabilityClass, classify
from quasar_workbench.probe import probe_endpoint, probe_many

from tests.tls_responder import LoopbackTlsResponder


@pytest.fixture(scope="module")
def responder(tmp_path_factory):
    r = LoopbackTlsResponder(tmp_path_factory.mktemp("tls"))
    yield r
    r.close()


def test_probe_records_tls13_ecdhe_identity(responder):
    asset = probe_endpoint(responder.host, responder.port, timeout=5.0)
    # the responder is configured for TLS 1.3 with an ECDSA P-256 identity
    assert asset.protocol == "TLS1.3"
    assert asset.kind == "protocol-endpoint"
    assert asset.algorithm == "ECDHE"
    assert asset.id == f"{responder.host}:{responder.port}"
    assert "ECDSA" in asset.name
    assert asset.key_bits == 256
    classified = classify(asset)
    assert classified.vulnerability is VulnerabilityClass.SHOR_BROKEN


def test_probe_closed_port_is_refused():
    # bind-then-close to get a port that is definitely not listening
    s = socket.socket()
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
    s.close()
    with pytest.raises(ProbeError) as exc_info:
        probe_endpoint("127.0.0.1", port, timeout=2.0)
    assert "refused" in str(exc_info.value)


def test_probe_zero_timeout_is_an_input_error(responder):
    with pytest.raises(InputError):
        probe_endpoint(responder.host, responder.port, timeout=0.0)


def test_probe_plaintext_port_is_a_handshake_error():
    listener = socket.socket()
    listener.bind(("127.0.0.1", 0))
    listener.listen(1)
    port = listener.getsockname()[1]
    try:
        with pytest.raises(ProbeError):
            probe_endpoint("127.0.0.1", port, timeout=2.0)
    finally:
        listener.close()


def test_probe_many_merges_in_endpoint_order(responder):
    s = socket.socket()
    s.bind(("127.0.0.1", 0))
    dead_port = s.getsockname()[1]
    s.close()
    endpoints = [
        (responder.host, responder.port),
        ("127.0.0.1", dead_port),
    ]
    assets, failures = probe_many(endpoints, timeout=3.0, max_in_flight=4)
    assert len(assets) == 1
    assert assets[0].protocol == "TLS1.3"
    assert len(failures) == 1
    assert str(dead_port) in failures[0]
