import pytest

# filled by tests/test_acceptance.py; one entry per acceptance criterion
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    def _record(number, title, parts, seconds, budget=None):
        """parts: list of (label, measured, tolerance, ok)."""
        ok = all(p[3] for p in parts) and (budget is None or seconds < budget)
        failing = [p[0] for p in parts if not p[3]]
        if budget is not None and seconds >= budget:
            failing.append(f"runtime {seconds:.1f}s >= {budget}s")
        detail = "; ".join(f"{label} {measured:.3g} (tol {tol:g})" for label, measured, tol, _ in parts)
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{seconds:.2f}s] {detail}"
        if failing:
            line += " | failing: " + ", ".join(failing)
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok, line

    return _record
