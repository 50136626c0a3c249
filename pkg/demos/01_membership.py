"""
Membership and the boundary
===========================

A two-qutrit spectrum is absolutely PPT when two 3x3 matrices built from
its sorted eigenvalues are both positive semidefinite. This walk-through
builds them for a few spectra and looks at what the verdicts say.
"""
# %%
#

import numpy as np

from absppt import build_L1, build_L2, classify, make_spectrum, uniform, zeta

# %%
# The maximally mixed state sits deep inside: both matrices are (2/9) I.

u = uniform()
print(build_L1(u.lam))
print(classify(u))

# %%
# The first anchor has one eigenvalue three times larger than the rest.
# Both determinants vanish, so it lies on the boundary.

z1 = zeta(1)
print(np.round(build_L1(z1.lam) * 11, 12))
print(classify(z1).kind.value, classify(z1).active.value)

# %%
# Slide from the anchor toward a spiked spectrum and watch the smallest
# eigenvalue of L1 go negative as soon as we leave the set.

spike = np.array([0.6] + [0.05] * 8)
for t in (0.0, 0.01, 0.05, 0.2):
    s = make_spectrum((1 - t) * z1.lam + t * spike, renormalize=True)
    v = classify(s)
    print(f"t={t:<5} {v.kind.value:9} min eig L1={v.min_eig_L1:+.3e}")

# %%
# Mixing any boundary point with the identity moves it strictly inside.

for i in range(1, 9):
    s = make_spectrum(0.9 * zeta(i).lam + 0.1 / 9)
    print(i, classify(s).kind.value)
