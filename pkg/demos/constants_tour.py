"""
The constants behind the reverse inequalities
=============================================

Generalized Kantorovich constant, the ratio constant for weights beyond one,
the ratio-bound pair (xi, psi), the sandwich constant L and the Mond-Pecaric
constant, each evaluated on a small grid.
"""

from opineq.constants import (
    K_mond_pecaric,
    L_constant,
    RatioBounds,
    SandwichBounds,
    kantorovich_K,
    ratio_C,
    xi_psi,
)
from opineq.inequalities.functions import parse_function

###############################################################################
# K(h, v) is at most one on (0, 1), equals one at the endpoints and reduces to
# the classical Kantorovich constant (h + 1)^2 / 4h at v = 2.

for h in (1.5, 4.0, 16.0):
    row = "  ".join(f"{kantorovich_K(h, v):.4f}" for v in (0.0, 0.25, 0.5, 0.75, 1.0, 2.0))
    print(f"h={h:5.1f}: {row}")

###############################################################################
# The ratio constant C(m, M, v) for v >= 1 and the pair (xi, psi).

print("C(1, 4, 2)   =", ratio_C(1, 4, 2), "(16/7)")
print("xi, psi at s=1/4, t=4, v=1/2:", xi_psi(RatioBounds(0.25, 4), 0.5))

###############################################################################
# L(m, M, v) is symmetric in v about 1/2, where it is the Kantorovich ratio.

for v in (0.1, 0.3, 0.5, 0.7, 0.9):
    print(f"L(1, 4, {v}) = {L_constant(SandwichBounds(1, 4), v):.6f}")

###############################################################################
# Mond-Pecaric constants for the decreasing catalog on [1, 4].

for name in ("invpow:1", "invpow:0.5", "resolvent:1"):
    print(f"K({name}) = {K_mond_pecaric(parse_function(name), SandwichBounds(1, 4)):.6f}")
