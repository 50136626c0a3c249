import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_spectrum(rng, n=9):
    v = rng.dirichlet(np.ones(n))
    v[-1] = 1.0 - v[:-1].sum()
    return v


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for r in sorted(RESULTS, key=lambda r: r.id):
            terminalreporter.write_line(r.line())
