import pytest

from photon_recoil import params_from_n_alpha

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Collects one summary line per acceptance criterion."""
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def medium_params():
    """Reference medium: N alpha = 0.02 at the line center, far detuned."""
    return params_from_n_alpha(0.02, omega_m=100.0, gamma0=1e-6, recoil_scale=1e-9)
