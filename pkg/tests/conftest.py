from fractions import Fraction

import pytest

from abelian_lines import LineConfig, Perturbation, Poly2


@pytest.fixture
def one_line_cubic():
    """a = (2), P = x - x^3: I(r) has one simple zero near r = 1.1364."""
    return LineConfig((Fraction(2),), ()), Perturbation(Poly2({(1, 0): 1, (3, 0): -1}), Poly2(), 3)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
