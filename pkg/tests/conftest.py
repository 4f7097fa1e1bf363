from pathlib import Path

import pytest

from vortexcyclo.core import make_grid, make_params
from vortexcyclo.hamiltonian import coefficient_fields

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"


@pytest.fixture(scope="session")
def params():
    return make_params(1.0)


@pytest.fixture(scope="session")
def grid():
    """Small grid that still resolves rho_B = 2 at dx = rho_B / 8."""
    return make_grid(96, 96, 24.0, 24.0)


@pytest.fixture(scope="session")
def ham(grid, params):
    return coefficient_fields(grid, params)


# one line per acceptance criterion, echoed at the end of the session
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.rstrip("abcdefgh")), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
