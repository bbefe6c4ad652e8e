import pytest

from semicyclic.cyclo import field_spec

NS = (3, 5, 7)


def a_values(spec):
    """1, 2, q and the formal a."""
    return [("1", spec.one()), ("2", spec.rational(2)), ("q", spec.q()), ("sym", spec.a())]


@pytest.fixture(params=NS, ids=lambda n: f"N{n}")
def spec(request):
    return field_spec(request.param)


@pytest.fixture(params=(3, 5), ids=lambda n: f"N{n}")
def small_spec(request):
    return field_spec(request.param)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
