import pytest

from pseudoharmonic.geometry import ALL_SIGNATURES
from pseudoharmonic.verify import default_params

SIG_IDS = [f"e{s.e:+d}d{s.d:+d}" for s in ALL_SIGNATURES]


@pytest.fixture(params=ALL_SIGNATURES, ids=SIG_IDS)
def sig(request):
    return request.param


@pytest.fixture
def case1_params(sig):
    return default_params(sig, 1)


@pytest.fixture
def case2_params(sig):
    return default_params(sig, 2)


# acceptance lines, echoed in the terminal summary so they survive output capture
ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    def record(label, value, tol, passed=None, above=False):
        # above=True: value is a minimum that must exceed tol
        if passed is None:
            passed = value > tol if above else value <= tol
        if above:
            bound = f"min {value:.3e} (floor {tol:.0e})"
        else:
            bound = f"max {value:.3e} (tol {tol:.0e})"
        line = f"{'PASS' if passed else 'FAIL'}  {label}: {bound}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
