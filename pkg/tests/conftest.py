from __future__ import annotations

from collections import defaultdict

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# criterion id -> list of (case label, passed, detail)
ACCEPTANCE: dict[str, list[tuple[str, bool, str]]] = defaultdict(list)


@pytest.fixture
def record_criterion():
    """Register a sub-result for the acceptance summary printed at the end of the run."""

    def record(criterion: str, label: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE[criterion].append((label, passed, detail))
        print(f"criterion {criterion} [{label}]: {'PASS' if passed else 'FAIL'} {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE, key=lambda c: (len(c), c)):
        cases = ACCEPTANCE[crit]
        failed = [c for c in cases if not c[1]]
        verdict = "PASS" if not failed else "FAIL"
        detail = f"{len(cases) - len(failed)}/{len(cases)} checks"
        if failed:
            detail += "; failing: " + ", ".join(f"{label} ({d})" if d else label for label, _, d in failed)
        tr.write_line(f"criterion {crit}: {verdict} ({detail})")
