import numpy as np
import pytest
from hypothesis import settings

import opdiscord as od

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


@pytest.fixture(scope="session")
def classical2():
    return od.make_classical(2)


@pytest.fixture(scope="session")
def classical3():
    return od.make_classical(3)


@pytest.fixture(scope="session")
def gbit():
    return od.make_gbit()


@pytest.fixture(scope="session")
def pentagon():
    return od.make_polygon(5)


@pytest.fixture(scope="session")
def qubit():
    return od.make_quantum(2)


@pytest.fixture(scope="session")
def two_qubits(qubit):
    return od.compose_theories(qubit, qubit)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260808)


def dm(ket):
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)
KETP = (KET0 + KET1) / np.sqrt(2.0)
KETIP = (KET0 + 1j * KET1) / np.sqrt(2.0)
BELL = (np.kron(KET0, KET0) + np.kron(KET1, KET1)) / np.sqrt(2.0)


@pytest.fixture(scope="session")
def bell_state(two_qubits):
    return two_qubits.state_from_matrix(dm(BELL))
