"""One test per acceptance criterion; each prints a PASS/FAIL line with measured values."""

import pytest

from absppt.acceptance import CRITERIA, AcceptanceConfig, run_criterion

RESULTS = []


@pytest.mark.parametrize("key", [c[1] for c in CRITERIA])
def test_criterion(key):
    r = run_criterion(key, AcceptanceConfig())
    RESULTS.append(r)
    print(r.line())
    assert r.passed, "; ".join(r.failures)


def test_misconfigured_tolerance_is_caught():
    r = run_criterion("anchors", AcceptanceConfig(det_tol=1e-2))
    print(r.line())
    assert not r.passed
