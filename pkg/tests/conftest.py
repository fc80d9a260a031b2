import pytest
from hypothesis import HealthCheck, settings

from s02e import bundled
from s02e.proofs import parse_proof

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# Filled by tests/test_acceptance.py, printed at the end of the session.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture(scope="session")
def corpus():
    return bundled.entries()


@pytest.fixture(scope="session")
def accepted_proofs(corpus):
    return {e.name: parse_proof(e.text) for e in corpus if e.expect == "accept"}
