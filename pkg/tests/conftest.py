import numpy as np
import pytest

from trlindblad.model import Constant, LindbladModel, Tabulated


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (a + a.conj().T)


def random_density_matrix(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_model(rng, d, n_terms=2, n_channels=2, tabulated=True):
    """Model mixing constant and tabulated schedules on [0, 10]."""
    terms, chans = [], []
    grid = np.linspace(0.0, 10.0, 7)
    for k in range(n_terms):
        if tabulated and k % 2:
            c = Tabulated(grid, rng.normal(size=grid.size))
        else:
            c = Constant(rng.normal())
        terms.append((random_hermitian(rng, d), c))
    for k in range(n_channels):
        L = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        if tabulated and k % 2:
            r = Tabulated(grid, rng.uniform(0.0, 2.0, size=grid.size))
        else:
            r = Constant(rng.uniform(0.0, 2.0))
        chans.append((L / np.sqrt(d), r))
    return LindbladModel(d, terms, chans)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    order = sorted(results, key=lambda k: (int("".join(c for c in k if c.isdigit())), k))
    for key in order:
        terminalreporter.write_line(results[key])
