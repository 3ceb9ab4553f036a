"""
Golden-Thompson and Ando-Hiai, checked on random instances
==========================================================

Each check evaluates both sides on concrete matrices and records the margin.
The reverse Ando-Hiai bound only holds for the operator norm; the trace norm
breaks it on ordinary random pairs.
"""

import numpy as np

from opineq.constants import SandwichBounds
from opineq.inequalities import checks
from opineq.norms import schatten
from opineq.sampling import SamplerSeed, bounded_pair, generator, hermitian_with_spectrum

rng = generator(SamplerSeed(3))
a = hermitian_with_spectrum(4, -1, 1, rng)
b = hermitian_with_spectrum(4, -1, 1, rng)

###############################################################################
# Trace form, and the norm form with a geometric mean.

res = checks.check_gt_trace(a, b)
print(f"tr e^(A+B) = {res.lhs:.6f} <= tr e^A e^B = {res.rhs:.6f}")
for p in (2.0, 1.0, 0.5):
    res = checks.check_gt_classic(a, b, 0.5, p, schatten(np.inf))
    print(f"p={p}: ratio lhs/rhs = {res.ratio:.6f}")

###############################################################################
# Ando-Hiai and its reverse for mI <= A, B <= MI.

sb = SandwichBounds(0.5, 2.0)
a, b = bounded_pair(3, sb, rng)
for nm in (schatten(np.inf), schatten(1)):
    forward, reverse = checks.check_andohiai_classic(a, b, 0.5, 3.0, nm, sb)
    print(f"{str(nm):>12}: forward {forward.status.value}, reverse {reverse.status.value} (ratio {reverse.ratio:.3f})")
