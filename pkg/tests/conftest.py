import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "abacal", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("abacal")

# filled by the acceptance tests, echoed once at the end of the session
ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
