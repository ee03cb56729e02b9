import numpy as np
import pytest

from dqc1ent.bipartite import Bipartition


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def basis_ket(index, qubits):
    v = np.zeros(2**qubits, dtype=complex)
    v[index] = 1
    return v


@pytest.fixture
def first_qubit_cut():
    return lambda total: Bipartition(total, (0,))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for r in sorted(RESULTS, key=lambda r: r.number):
            terminalreporter.write_line(r.line())
