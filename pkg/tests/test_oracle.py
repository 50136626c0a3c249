import numpy as np
import pytest

from absppt import families as fam
from absppt.criterion import Kind, classify
from absppt.oracle import (InvalidDirection, haar_unitary, mc_ppt_scan, min_pt_eigenvalue, partial_transpose,
                           perturbation_decompose)
from absppt.spectrum import make_spectrum, uniform


def test_maximally_entangled_pt():
    psi = np.zeros(9)
    psi[[0, 4, 8]] = 1 / np.sqrt(3)
    rho = np.outer(psi, psi)
    assert min_pt_eigenvalue(rho) == pytest.approx(-1 / 3, abs=1e-12)


def test_pt_is_involution(rng):
    m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    assert np.allclose(partial_transpose(partial_transpose(m)), m)


def test_local_unitary_invariance():
    rho = haar_unitary(3) @ np.diag(fam.zeta(2).lam) @ haar_unitary(3).conj().T
    v, w = haar_unitary(5, dim=3), haar_unitary(6, dim=3)
    loc = np.kron(v, w)
    assert min_pt_eigenvalue(loc @ rho @ loc.conj().T) == pytest.approx(min_pt_eigenvalue(rho), abs=1e-10)


def test_haar_unitary_is_unitary_and_reproducible():
    u = haar_unitary(11, 4)
    assert np.allclose(u @ u.conj().T, np.eye(9), atol=1e-12)
    assert np.array_equal(u, haar_unitary(11, 4))
    assert not np.allclose(u, haar_unitary(11, 5))


def test_uniform_scan():
    r = mc_ppt_scan(uniform(), 100, 0)
    assert r.min_pt_eigenvalue == pytest.approx(1 / 9, abs=1e-12)


def test_argmin_reproduces_worst_sample():
    s = fam.zeta(1)
    r = mc_ppt_scan(s, 300, 9)
    u = haar_unitary(9, r.argmin_seed)
    assert min_pt_eigenvalue(u @ np.diag(s.lam) @ u.conj().T) == r.min_pt_eigenvalue
    assert mc_ppt_scan(s, 300, 9).to_dict()["min_pt_eigenvalue"] == r.min_pt_eigenvalue


def test_batching_does_not_change_result():
    s = fam.zeta(4)
    assert mc_ppt_scan(s, 250, 2, batch=7).min_pt_eigenvalue == mc_ppt_scan(s, 250, 2).min_pt_eigenvalue


def test_zeta1_scan_nonnegative():
    assert mc_ppt_scan(fam.zeta(1), 5000, 1).min_pt_eigenvalue >= -1e-8


def test_spike_scan_negative():
    s = make_spectrum([0.5] + [0.0625] * 8)
    assert classify(s).kind is Kind.NOT_AP
    assert mc_ppt_scan(s, 5000, 1).min_pt_eigenvalue < -1e-6


def test_agreement_on_random_spectra(rng):
    # AP ones from family points and interior mixtures, plus arbitrary spectra
    fs = [f for f in fam.list_families() if f.kind != "point"]
    pts = []
    for k in range(20):
        f = fs[k % len(fs)]
        lo, hi = f.c_interval
        s = fam.eval_family(f, lo + (hi - lo) * rng.uniform(0.1, 0.9)).lam
        pts.append(s)
        pts.append(0.7 * s + 0.3 / 9)
    for _ in range(20):
        v = rng.dirichlet(np.ones(9) * 0.3)
        pts.append(v / v.sum())
    for lam in pts:
        s = make_spectrum(lam, renormalize=True)
        r = mc_ppt_scan(s, 2000, 4)
        kind = classify(s).kind
        if kind is not Kind.NOT_AP:
            assert r.min_pt_eigenvalue >= -1e-8
        if r.min_pt_eigenvalue < -1e-6:
            assert kind is Kind.NOT_AP


def test_witness_for_nu153():
    s = fam.eval_family(fam.get_family("nu{1,5,3}"), 0.07)
    t = np.array([15, -6, -6, -6, -6, -6, 5, 5, 5], float)
    alpha, beta, eps = perturbation_decompose(s, t)
    assert eps > 0
    assert classify(alpha).is_ap and classify(beta).is_ap
    assert np.max(np.abs((alpha.lam + beta.lam) / 2 - s.lam)) <= 1e-12


def test_no_witness_for_anchor():
    s = fam.zeta(1)
    t = np.array([8] + [-1] * 8, float)
    assert perturbation_decompose(s, t) is None


def test_invalid_direction():
    s = fam.zeta(1)
    with pytest.raises(InvalidDirection):
        perturbation_decompose(s, np.ones(9))
    with pytest.raises(InvalidDirection):
        perturbation_decompose(s, np.array([1, -1, 0, 0, 0, 0, 0, 0, 0], float))
    with pytest.raises(ValueError):
        perturbation_decompose(uniform(), np.array([8] + [-1] * 8, float))
