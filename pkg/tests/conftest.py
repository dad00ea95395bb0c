import pytest

from cavity_eit import AtomCavityParams

# (criterion label, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_LINES = []


@pytest.fixture
def strong_set():
    """parameters with Omega = 5 g."""
    return AtomCavityParams(n_atoms=400, g=1.0, omega_c=5.0, kappa=1.0, gamma_e=1.0)


@pytest.fixture
def weak_set():
    """parameters with Omega = 0.5 g."""
    return AtomCavityParams(n_atoms=400, g=1.0, omega_c=0.5, kappa=1.0, gamma_e=1.0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
