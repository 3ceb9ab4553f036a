"""
Weighted Kubo-Ando operator means.

A mean is described by a :class:`Mean` (kind plus weight ``v``) and evaluated
through its representing function ``f`` as
``A sigma_v B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}``.

Weights outside ``[0, 1]`` are accepted. The arithmetic and geometric means
are always defined there; harmonic and power means are evaluated only when
their representing function stays positive on the relevant spectrum and
raise :class:`~opineq.errors.DomainViolation` otherwise.
"""
import enum
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainViolation
from .hermitian import DEFAULT_TOL, mean_conjugation, require_pd

__all__ = [
    "MeanKind",
    "Mean",
    "arithmetic",
    "geometric",
    "harmonic",
    "power",
    "rep_value",
    "evaluate_mean",
    "adjoint_mean",
    "verify_betweenness",
    "DEFAULT_GRID",
]

DEFAULT_GRID = np.logspace(-3, 3, 41)


class MeanKind(enum.Enum):
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    HARMONIC = "harmonic"
    POWER = "power"


@dataclass(frozen=True)
class Mean:
    kind: MeanKind
    v: float
    r: Optional[float] = None

    def __post_init__(self):
        if not np.isfinite(self.v):
            raise ValueError(f"weight must be finite, got {self.v}")
        if self.kind is MeanKind.POWER:
            if self.r is None or not (-1 <= self.r <= 1) or self.r == 0:
                raise ValueError(f"power mean needs r in [-1, 1] \\ {{0}}, got {self.r}")
        elif self.r is not None:
            raise ValueError(f"{self.kind.value} mean takes no exponent r")

    def __str__(self):
        if self.kind is MeanKind.POWER:
            return f"power:r={self.r!r},v={self.v!r}"
        return f"{self.kind.value}:v={self.v!r}"

    @property
    def family(self):
        """The descriptor without its weight, e.g. ``"power:r=0.5"``."""
        if self.kind is MeanKind.POWER:
            return f"power:r={self.r!r}"
        return self.kind.value

    def with_weight(self, v):
        return Mean(self.kind, float(v), self.r)

    @classmethod
    def parse(cls, text, v=None):
        """Parse ``"geometric:v=0.5"`` or ``"power:r=-0.5,v=0.25"``.

        The weight may be omitted from ``text`` when ``v`` is given.
        """
        head, _, rest = text.strip().partition(":")
        try:
            kind = MeanKind(head.lower())
        except ValueError:
            raise ValueError(f"unknown mean kind {head!r}") from None
        fields = {}
        for item in filter(None, re.split(r"\s*,\s*", rest)):
            key, eq, value = item.partition("=")
            if not eq or key not in ("r", "v"):
                raise ValueError(f"malformed mean descriptor {text!r}")
            fields[key] = float(value)
        if "v" not in fields:
            if v is None:
                raise ValueError(f"mean descriptor {text!r} has no weight")
            fields["v"] = float(v)
        return cls(kind, fields["v"], fields.get("r"))


def arithmetic(v):
    return Mean(MeanKind.ARITHMETIC, float(v))


def geometric(v):
    return Mean(MeanKind.GEOMETRIC, float(v))


def harmonic(v):
    return Mean(MeanKind.HARMONIC, float(v))


def power(r, v):
    return Mean(MeanKind.POWER, float(v), float(r))


def _positive_or_raise(pre, mean):
    pre = np.asarray(pre, dtype=float)
    bad = ~(pre > 0)
    if np.any(bad):
        witness = float(pre[bad].flat[0])
        raise DomainViolation(f"{mean}: representing function undefined ({witness!r} <= 0)", value=witness)
    return pre


def rep_value(mean: Mean, t):
    """Representing function of ``mean`` at ``t > 0`` (scalar or array)."""
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise DomainViolation("representing functions are defined for t > 0", value=float(np.min(t)))
    v = mean.v
    if mean.kind is MeanKind.ARITHMETIC:
        out = (1 - v) + v * t
    elif mean.kind is MeanKind.GEOMETRIC:
        out = t**v
    elif mean.kind is MeanKind.HARMONIC:
        out = 1.0 / _positive_or_raise((1 - v) + v / t, mean)
    else:
        out = _positive_or_raise((1 - v) + v * t**mean.r, mean) ** (1.0 / mean.r)
    return out if out.ndim else float(out)


def evaluate_mean(a, b, mean: Mean, tol=DEFAULT_TOL):
    """Operator mean ``A sigma_v B`` of two positive definite matrices.

    The arithmetic mean is formed directly as ``(1-v) A + v B``; all other
    kinds go through :func:`~opineq.hermitian.mean_conjugation`.

    Raises
    ------
    NotPositiveDefinite
        If ``A`` or ``B`` is not positive definite.
    DomainViolation
        If the representing function is undefined on the spectrum of
        ``A^{-1/2} B A^{-1/2}`` (only possible for weights outside [0, 1]).
    """
    if mean.kind is MeanKind.ARITHMETIC:
        require_pd(a, tol, "A")
        require_pd(b, tol, "B")
        out = (1 - mean.v) * np.asarray(a) + mean.v * np.asarray(b)
        out = (out + out.conj().T) / 2
        out.setflags(write=False)
        return out
    return mean_conjugation(a, b, lambda t: rep_value(mean, t), tol)


def adjoint_mean(mean: Mean) -> Mean:
    """Descriptor of ``(A^{-1} sigma B^{-1})^{-1}``."""
    if mean.kind is MeanKind.ARITHMETIC:
        return harmonic(mean.v)
    if mean.kind is MeanKind.HARMONIC:
        return arithmetic(mean.v)
    if mean.kind is MeanKind.GEOMETRIC:
        return mean
    return power(-mean.r, mean.v)


def verify_betweenness(mean: Mean, grid=None, rtol=1e-12):
    """Check harmonic <= mean <= arithmetic pointwise on ``grid``.

    Defaults to 41 log-spaced points on ``[1e-3, 1e3]``.
    """
    if not 0 <= mean.v <= 1:
        raise ValueError(f"betweenness is only meaningful for v in [0, 1], got {mean.v}")
    t = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    if t.size == 0 or np.any(t <= 0):
        raise ValueError("grid must be non-empty and positive")
    lower = rep_value(harmonic(mean.v), t)
    upper = rep_value(arithmetic(mean.v), t)
    value = rep_value(mean, t)
    slack = rtol * upper
    return bool(np.all(lower <= value + slack) and np.all(value <= upper + slack))
