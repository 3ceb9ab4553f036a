"""
Scalar constants attached to the operator inequalities.

Every function here is a pure function of a few floats. The bound records
(:class:`SandwichBounds`, :class:`RatioBounds`, :class:`FourPointBounds`)
validate their ordering on construction and are shared with the samplers.
"""
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
from scipy import optimize

from .errors import DomainViolation, OverflowGuard

__all__ = [
    "SandwichBounds",
    "RatioBounds",
    "FourPointBounds",
    "SecantCoefficients",
    "kantorovich_K",
    "ratio_C",
    "xi_psi",
    "L_constant",
    "L_from_ratio",
    "gamma_p",
    "secant_coeffs",
    "K_mond_pecaric",
]

EXP_LIMIT = 700.0


@dataclass(frozen=True)
class SandwichBounds:
    """``m I <= A, B <= M I``."""

    m: float
    M: float

    def __post_init__(self):
        if not 0 < self.m < self.M:
            raise ValueError(f"need 0 < m < M, got m={self.m}, M={self.M}")

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class RatioBounds:
    """``s A <= B <= t A``."""

    s: float
    t: float

    def __post_init__(self):
        if not 0 < self.s <= self.t:
            raise ValueError(f"need 0 < s <= t, got s={self.s}, t={self.t}")

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class FourPointBounds:
    """``m2 I <= A <= m1 I < M1 I <= B <= M2 I``."""

    m2: float
    m1: float
    M1: float
    M2: float

    def __post_init__(self):
        if not 0 < self.m2 <= self.m1 < self.M1 <= self.M2:
            raise ValueError(f"need 0 < m2 <= m1 < M1 <= M2, got {self}")

    def as_dict(self):
        return asdict(self)


class SecantCoefficients(NamedTuple):
    a_f: float
    b_f: float
    m: float
    M: float

    def __call__(self, t):
        return self.a_f * t + self.b_f


def kantorovich_K(h, v):
    """Generalized Kantorovich constant ``K(h, v)``.

    ``K(h, 0) = K(h, 1) = 1`` is returned directly since the closed form is
    0/0 there.
    """
    if not h > 0 or h == 1:
        raise DomainViolation(f"K(h, v) needs h > 0 and h != 1, got h={h}", value=float(h))
    if v == 0 or v == 1:
        return 1.0
    hv = h**v
    return (hv - h) / ((v - 1) * (h - 1)) * ((v - 1) / v * (hv - 1) / (hv - h)) ** v


def ratio_C(m, M, v):
    """``(m #_v M) / (m nabla_v M)`` for ``v >= 1``.

    Computed in log space from ``h = M/m``, so huge ``m, M`` are fine.
    """
    if not 0 < m < M:
        raise ValueError(f"need 0 < m < M, got m={m}, M={M}")
    if v < 1:
        raise ValueError(f"ratio_C needs v >= 1, got {v}")
    return _ratio_C_log(math.log(M) - math.log(m), v)


def _ratio_C_log(log_h, v):
    # (h**v) / ((1 - v) + v h) with log_h = log(M/m) > 0
    log_den = math.log(v) + log_h + math.log1p((1 - v) / v * math.exp(-log_h))
    assert math.isfinite(log_den)
    return math.exp(v * log_h - log_den)


def xi_psi(bounds: RatioBounds, v):
    """The pair ``(xi, psi)`` for ``s A <= B <= t A`` and ``v`` in [0, 1].

    ``xi`` bounds the arithmetic mean by the geometric mean and ``psi`` the
    geometric mean by the harmonic mean.
    """
    if not 0 <= v <= 1:
        raise ValueError(f"xi_psi needs v in [0, 1], got {v}")
    s, t = bounds.s, bounds.t
    xi = max(((1 - v) + v * s) / s**v, ((1 - v) + v * t) / t**v)
    psi = max(s**v * ((1 - v) + v / s), t**v * ((1 - v) + v / t))
    return xi, psi


def L_from_ratio(h, v):
    """``L(m, M)`` written in terms of ``h = M / m`` only (it is scale free)."""
    lam = min(v, 1 - v)
    mu = 1 - lam
    # (1 nabla_lam h)(1 #_mu h) / ((1 #_lam h)(1 !_mu h))
    arith = (1 - lam) + lam * h
    harm = 1.0 / ((1 - mu) + mu / h)
    return arith * h**mu / (h**lam * harm)


def L_constant(bounds: SandwichBounds, v):
    """``L(m, M) = (m nabla_l M)(m #_u M) / ((m #_l M)(m !_u M))``
    with ``l = min(v, 1-v)`` and ``u = max(v, 1-v)``."""
    if not 0 <= v <= 1:
        raise ValueError(f"L_constant needs v in [0, 1], got {v}")
    return L_from_ratio(bounds.M / bounds.m, v)


def gamma_p(bounds: FourPointBounds, p, v):
    """``ratio_C(exp(p m2), exp(p M2), v)``, evaluated without forming the
    exponentials."""
    if not p > 0:
        raise ValueError(f"gamma_p needs p > 0, got {p}")
    if v < 1:
        raise ValueError(f"gamma_p needs v >= 1, got {v}")
    if p * bounds.M2 > EXP_LIMIT:
        raise OverflowGuard(f"p * M2 = {p * bounds.M2} exceeds {EXP_LIMIT}")
    return _ratio_C_log(p * (bounds.M2 - bounds.m2), v)


def secant_coeffs(f, bounds: SandwichBounds):
    """Slope and intercept of the chord of ``f`` over ``[m, M]``."""
    m, M = bounds.m, bounds.M
    fm, fM = float(f(m)), float(f(M))
    if not (math.isfinite(fm) and math.isfinite(fM)):
        raise DomainViolation("f is not finite at the interval endpoints", value=fm if not math.isfinite(fm) else fM)
    return SecantCoefficients((fM - fm) / (M - m), (M * fm - m * fM) / (M - m), m, M)


def K_mond_pecaric(f, bounds: SandwichBounds, grid_points=1024, xtol=1e-12):
    """``max (a_f t + b_f) / f(t)`` over ``t`` in ``[m, M]``.

    A 1024-point grid locates the maximum, then a bounded golden-section /
    parabolic search (scipy's ``bounded`` method) refines it inside the
    neighbouring grid cells down to an interval of width ``xtol``.
    """
    sec = secant_coeffs(f, bounds)
    t = np.linspace(bounds.m, bounds.M, grid_points)
    ft = np.asarray(f(t), dtype=float)
    if np.any(~(ft > 0)):
        bad = t[~(ft > 0)][0]
        raise DomainViolation(f"f must be positive on [m, M]; f({bad!r}) = {f(bad)!r}", value=float(bad))

    def ratio(x):
        return (sec.a_f * x + sec.b_f) / float(f(x))

    values = (sec.a_f * t + sec.b_f) / ft
    i = int(np.argmax(values))
    best = float(values[i])
    lo, hi = t[max(i - 1, 0)], t[min(i + 1, grid_points - 1)]
    res = optimize.minimize_scalar(
        lambda x: -ratio(x), bounds=(lo, hi), method="bounded", options={"xatol": xtol}
    )
    if res.success:
        best = max(best, -float(res.fun))
    return best
