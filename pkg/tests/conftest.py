import pytest
from hypothesis import settings

from cptlab import example1
from cptlab.acts import StateSpace

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def ex1():
    """Example capacity and acts with exact rational payoffs."""
    return example1.capacity(), example1.acts()


@pytest.fixture
def space3():
    return StateSpace.of_size(3)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                verdict = "PASS" if outcome == "passed" else "FAIL"
                lines.append((props["criterion"], f"[{verdict}] criterion {props['criterion']}: {props.get('detail', '')}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
