"""
A criterion-free cross-check
============================

Conjugate diag(s) by Haar-random unitaries and take the partial transpose.
A negative eigenvalue anywhere disproves absolute PPT. None of this uses
the L-matrices, so agreement is a genuine check.
"""
# %%
#

import numpy as np

from absppt import classify, haar_unitary, make_spectrum, mc_ppt_scan, partial_transpose, zeta
from absppt.oracle import min_pt_eigenvalue

# %%
# The partial transpose of the maximally entangled state has eigenvalue -1/3.

psi = np.zeros(9)
psi[[0, 4, 8]] = 1 / np.sqrt(3)
print(np.linalg.eigvalsh(partial_transpose(np.outer(psi, psi)))[0])

# %%
# Anchors hover just above zero; spiked spectra dip well below.

for s in (zeta(1), zeta(6), make_spectrum([0.5] + [0.0625] * 8)):
    r = mc_ppt_scan(s, n=2000, seed=0)
    print(classify(s).kind.value, f"{r.min_pt_eigenvalue:+.4f}", "worst sample", r.argmin_seed)

# %%
# The worst unitary can be rebuilt from the seed and the sample index.

r = mc_ppt_scan(zeta(1), n=2000, seed=0)
u = haar_unitary(0, r.argmin_seed)
rho = u @ np.diag(zeta(1).lam) @ u.conj().T
print(min_pt_eigenvalue(rho) == r.min_pt_eigenvalue)
