import numpy as np
import pytest

from qpurify import make_density, normalized_state
from qpurify.phasespace import DEFAULT_GRID, coherent_wavefunction, fock_wavefunction


def random_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return normalized_state(v)


def random_unitary(rng, dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, dim, rank=None, spectrum=None):
    if spectrum is None:
        rank = dim if rank is None else rank
        w = rng.uniform(0.05, 1.0, size=rank)
        spectrum = np.zeros(dim)
        spectrum[:rank] = w / w.sum()
    u = random_unitary(rng, dim)
    m = (u * np.asarray(spectrum)) @ u.conj().T
    return make_density(0.5 * (m + m.conj().T))


def orthonormal_pair(rng, dim):
    u = random_unitary(rng, dim)
    return normalized_state(u[:, 0]), normalized_state(u[:, 1])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# oscillator eigenstates and displaced Gaussians that fit the default grid
CATALOG = {
    "fock0": lambda: fock_wavefunction(0),
    "fock1": lambda: fock_wavefunction(1),
    "fock2": lambda: fock_wavefunction(2),
    "fock3": lambda: fock_wavefunction(3),
    "coherent_2i": lambda: coherent_wavefunction(2j),
    "coherent_diag": lambda: coherent_wavefunction(np.sqrt(2) * (1 + 1j)),
    "coherent_1.5": lambda: coherent_wavefunction(1.5),
    "coherent_-1": lambda: coherent_wavefunction(-1.0),
}


@pytest.fixture(scope="session")
def grid():
    return DEFAULT_GRID


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one summary line per acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(number, title, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  [{detail}]"
        lines.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
