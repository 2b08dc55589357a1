import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")

# filled by tests/test_acceptance.py: criterion -> list of (passed, line)
ACCEPTANCE_LINES: dict[int, list[tuple[bool, str]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE_LINES):
        for ok, line in ACCEPTANCE_LINES[crit]:
            tr.write_line(f"criterion {crit:2d}: {'PASS' if ok else 'FAIL'}  {line}")
