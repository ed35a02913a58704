import numpy as np

from truncosc import algebra, verify
from truncosc.errors import DomainError


def test_fresh_checkout_passes():
    checks = verify.run_verify()
    assert verify.exit_status(checks) == 0
    assert all(ch.passed for ch in checks if ch.kind == "contract")
    assert {ch.suite for ch in checks} == {"algebra", "coherent", "multimode", "entanglement", "figures"}


def test_report_lists_suites_and_findings():
    checks = verify.run_verify()
    report = verify.format_report(checks)
    for suite in ("algebra", "coherent", "multimode", "entanglement", "figures"):
        assert f"[{suite}] max contract defect" in report
    findings = [line for line in report.splitlines() if "FINDING" in line]
    assert len(findings) == sum(1 for ch in checks if ch.kind == "finding" and not ch.passed)
    assert any("Stokes [s3,s+-]" in line for line in findings)


def test_off_by_one_structure_function_is_caught(monkeypatch):
    def broken(t, n):
        if not 0 <= n <= t.two_s + 1:
            raise DomainError("out of range")
        return n * (t.two_s + 2 - n) / t.two_s

    monkeypatch.setattr(algebra, "structure_function", broken)
    checks = verify.run_verify()
    failed = {ch.name for ch in checks if ch.kind == "contract" and not ch.passed}
    assert "commutator [a-,a+] = 1 - N/s" in failed
    assert verify.exit_status(checks) == 1
    assert "FAIL    commutator" in verify.format_report(checks)


def test_guard_turns_exceptions_into_failures():
    c = verify._Collector()
    c.guard("x", "raises", lambda: 1 / 0, 1.0)
    (ch,) = c.checks
    assert not ch.passed and ch.measured == np.inf
