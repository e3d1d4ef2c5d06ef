from pathlib import Path

import pytest

from qalg import corpus
from qalg.fields import CyclotomicField, PrimeField, Rationals

FIXTURES = Path(__file__).parent / "fixtures"

Q = Rationals()
F5 = PrimeField(5)
Z3 = CyclotomicField(3)


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture(scope="session")
def lam2():
    return corpus.quantum_exterior(2)


@pytest.fixture(scope="session")
def lam1():
    return corpus.quantum_exterior(1)


@pytest.fixture(scope="session")
def kx3():
    return corpus.truncated_polynomial()


@pytest.fixture(scope="session")
def dkron():
    return corpus.delta_kronecker()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
