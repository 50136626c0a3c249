"""
Extreme points with three distinct eigenvalues
==============================================

Each family is a curve of boundary spectra parametrized by the smallest
eigenvalue ``c``. Here we trace one of them end to end and run the rank
test along the way.
"""
# %%
#

import numpy as np

from absppt import classify, eval_family, extremality_test, get_family, select_families
from absppt.families import limit_target, sample_c

f = get_family("nu{2,4,3}^(1)")
print(f.name, f.c_interval, f.limit_lo, "->", f.limit_hi)

# %%
# Along the curve L1 stays singular and the t-system has full rank.

for c in sample_c(f, 6):
    s = eval_family(f, c)
    v = classify(s)
    e = extremality_test(s)
    print(f"c={c:.5f}  a={s[0]:.5f}  b={s[2]:.5f}  l1={v.l1:+.1e}  {e.kind.value}  "
          f"sigma_min/sigma_max={e.singular_values[-1] / e.singular_values[0]:.3f}")

# %%
# Near the lower end the curve runs into an anchor, at the upper end into the
# point where both determinants vanish.

lo, hi = f.c_interval
print(np.abs(eval_family(f, lo + 1e-9).lam - limit_target(f.limit_lo).lam).max())
print(np.abs(eval_family(f, hi).lam - limit_target(f.limit_hi).lam).max())

# %%
# The one exception: nu{1,5,3} sits on the boundary but is a mixture of two
# anchors, and the rank test finds the escape direction.

g = get_family("nu{1,5,3}")
e = extremality_test(eval_family(g, 0.07))
print(e.kind.value, np.round(e.direction / e.direction[0] * 15, 9))

# %%
# Every row at once.

print(len(select_families("all")), "extreme rows")
