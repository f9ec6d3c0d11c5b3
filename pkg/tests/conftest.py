from fractions import Fraction as Fr

import pytest

from ifs_w1.maps import Affine, IFSystem, WeightVector, flip_system


@pytest.fixture
def eg1_system():
    return IFSystem([Affine(Fr(1, 5), 0), Affine(Fr(1, 5), Fr(2, 5)), Affine(Fr(1, 5), Fr(4, 5))])


@pytest.fixture
def eg1_weights():
    return WeightVector([Fr(1, 2), Fr(1, 4), Fr(1, 4)]), WeightVector([Fr(1, 4), Fr(1, 4), Fr(1, 2)])


@pytest.fixture
def f3():
    return flip_system(3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
