"""
The p -> 0 limit and how sharp the constants are
================================================

``(e^{pA} sigma e^{pB})^{1/p}`` approaches ``e^{A nabla B}`` in norm as p
shrinks. The error usually decreases monotonically, but for means above the
geometric one it can first grow; the last part shows such an instance.
"""

import numpy as np

from opineq.inequalities import checks
from opineq.inequalities.registry import DEFAULT_LIMIT_P, get_spec
from opineq.inequalities.scan import tightness_scan
from opineq.hermitian import DEFAULT_TOL
from opineq.means import geometric, harmonic, power
from opineq.norms import schatten
from opineq.sampling import SamplerSeed, generator, hermitian_with_spectrum, stream_label

INF = schatten(np.inf)
rng = generator(SamplerSeed(1))
a = hermitian_with_spectrum(3, -1, 1, rng)
b = hermitian_with_spectrum(3, -1, 1, rng)

for sigma in (harmonic(0.5), geometric(0.5), power(0.5, 0.5)):
    res = checks.check_limit(a, b, 0.5, sigma, INF, DEFAULT_LIMIT_P)
    print(sigma.family, " ".join(f"{e:.2e}" for e in res.details["errors"]))

###############################################################################
# A seeded instance where err(p) rises between p = 1 and p = 0.5.

cell = dict(v=0.25, sigma=power(0.5, 0.5), norm=INF, p_list=DEFAULT_LIMIT_P)
(res,), _ = get_spec("limit36").run(3, generator(SamplerSeed(0, 132, stream_label("limit36", 3))), cell, DEFAULT_TOL)
print("non-monotone:", " ".join(f"{e:.2e}" for e in res.details["errors"]), "->", res.status.value)

###############################################################################
# Tightness: at v = 1 the constant of the Ando-Hiai bound for v >= 1 is one
# and the inequality is attained.

for row in tightness_scan("thm23-ah", {"v": [1.0, 1.5, 2.0]}, 20, seed=0):
    print(f"v={row['cell']['v']}: max lhs/rhs = {row['max_ratio']:.12f}")
