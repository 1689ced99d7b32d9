import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20020120)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
