"""
Fixed catalog of operator monotone functions on ``(0, inf)``.

Increasing: ``pow:r`` (``t^r``, ``0 < r <= 1``), ``moebius:c``
(``t/(t+c)``, ``c > 0``) and ``log1p`` (``log(1+t)``).
Decreasing: ``invpow:r`` (``t^-r``, ``0 < r <= 1``) and ``resolvent:c``
(``1/(t+c)``, ``c > 0``).
"""
from dataclasses import dataclass

import numpy as np

__all__ = ["MonotoneFunction", "parse_function", "INCREASING_DEFAULTS", "DECREASING_DEFAULTS"]


@dataclass(frozen=True)
class MonotoneFunction:
    name: str
    arg: float = None

    def __post_init__(self):
        if self.name in ("pow", "invpow"):
            if self.arg is None or not 0 < self.arg <= 1:
                raise ValueError(f"{self.name}:r needs 0 < r <= 1, got {self.arg}")
        elif self.name in ("moebius", "resolvent"):
            if self.arg is None or not self.arg > 0:
                raise ValueError(f"{self.name}:c needs c > 0, got {self.arg}")
        elif self.name == "log1p":
            if self.arg is not None:
                raise ValueError("log1p takes no argument")
        else:
            raise ValueError(f"unknown function {self.name!r}")

    @property
    def increasing(self):
        return self.name in ("pow", "moebius", "log1p")

    def __str__(self):
        return self.name if self.arg is None else f"{self.name}:{self.arg!r}"

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.name == "pow":
            out = t**self.arg
        elif self.name == "moebius":
            out = t / (t + self.arg)
        elif self.name == "log1p":
            out = np.log1p(t)
        elif self.name == "invpow":
            out = t ** (-self.arg)
        else:
            out = 1.0 / (t + self.arg)
        return out if out.ndim else float(out)

    def reciprocal(self, t):
        """``1 / f(t)``."""
        return 1.0 / self(t)


def parse_function(text):
    name, _, arg = text.strip().lower().partition(":")
    return MonotoneFunction(name, float(arg) if arg else None)


INCREASING_DEFAULTS = tuple(map(parse_function, ("pow:0.5", "moebius:1", "log1p")))
DECREASING_DEFAULTS = tuple(map(parse_function, ("invpow:1", "invpow:0.5", "resolvent:1")))
