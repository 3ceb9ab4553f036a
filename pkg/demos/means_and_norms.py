"""
Operator means and unitarily invariant norms
============================================

Weighted means of positive definite matrices, their ordering in the Loewner
sense and the Schatten / Ky Fan norms used by the norm inequalities.
"""

import numpy as np

from opineq.hermitian import loewner_compare
from opineq.means import arithmetic, evaluate_mean, geometric, harmonic, power
from opineq.norms import kyfan, norm_value, schatten
from opineq.sampling import SamplerSeed, generator, hermitian_with_spectrum

rng = generator(SamplerSeed(7))
a = hermitian_with_spectrum(3, 0.5, 2.0, rng)
b = hermitian_with_spectrum(3, 0.5, 2.0, rng)

###############################################################################
# For non-commuting ``A, B`` the three classical means still sit in order:
# harmonic <= geometric <= arithmetic. The Loewner margin is the smallest
# eigenvalue of the difference.

v = 0.3
hm, gm, am = (evaluate_mean(a, b, m(v)) for m in (harmonic, geometric, arithmetic))
print("margin  H <= G:", loewner_compare(hm, gm).margin)
print("margin  G <= A:", loewner_compare(gm, am).margin)

###############################################################################
# Power means interpolate: r = 1 is arithmetic, r = -1 harmonic.

for r in (-1.0, -0.5, 0.5, 1.0):
    pm = evaluate_mean(a, b, power(r, v))
    print(f"power r={r:+.1f}: trace {np.trace(pm).real:.6f}")

###############################################################################
# Beyond [0, 1] the arithmetic/geometric order flips (when A nabla_v B stays
# positive definite, e.g. B >= A).

bb = a + b
print("v=2, A <= G?", loewner_compare(evaluate_mean(a, bb, arithmetic(2)), evaluate_mean(a, bb, geometric(2))).margin >= 0)

###############################################################################
# Norms of the geometric mean.

for nm in (schatten(1), schatten(2), schatten(np.inf), kyfan(2)):
    print(f"{str(nm):>13}: {norm_value(gm, nm):.6f}")
