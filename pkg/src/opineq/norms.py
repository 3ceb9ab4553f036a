"""Unitarily invariant norms: Schatten-p and Ky Fan-k."""
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import KExceedsDim

__all__ = ["Norm", "schatten", "kyfan", "singular_values", "norm_value", "trace_of"]


@dataclass(frozen=True)
class Norm:
    family: str
    order: Union[float, int]

    def __post_init__(self):
        if self.family == "schatten":
            if not (self.order >= 1):
                raise ValueError(f"Schatten order must be >= 1 or inf, got {self.order}")
        elif self.family == "kyfan":
            if int(self.order) != self.order or self.order < 1:
                raise ValueError(f"Ky Fan order must be a positive integer, got {self.order}")
            object.__setattr__(self, "order", int(self.order))
        else:
            raise ValueError(f"unknown norm family {self.family!r}")

    def __str__(self):
        if self.family == "schatten" and np.isinf(self.order):
            return "schatten:inf"
        if self.family == "schatten" and float(self.order).is_integer():
            return f"schatten:{int(self.order)}"
        return f"{self.family}:{self.order!r}"

    @classmethod
    def parse(cls, text):
        family, _, order = text.strip().lower().partition(":")
        if family == "schatten":
            return cls("schatten", np.inf if order in ("inf", "infinity") else float(order))
        if family == "kyfan":
            return cls("kyfan", int(order))
        raise ValueError(f"unknown norm {text!r}")

    def applicable(self, dim):
        return self.family != "kyfan" or self.order <= dim

    def __call__(self, a):
        return norm_value(a, self)


def schatten(p):
    return Norm("schatten", p)


def kyfan(k):
    return Norm("kyfan", k)


def singular_values(a):
    """Singular values in descending order.

    Hermitian input takes the eigenvalue route (absolute eigenvalues); any
    other square matrix falls back to a dense SVD.
    """
    a = np.asarray(a)
    if np.array_equal(a, a.conj().T):
        s = np.abs(np.linalg.eigvalsh(a))
    else:
        s = np.linalg.svd(a, compute_uv=False)
    return np.sort(s)[::-1]


def norm_value(a, norm: Norm):
    s = singular_values(a)
    if norm.family == "kyfan":
        if norm.order > s.size:
            raise KExceedsDim(f"Ky Fan order {norm.order} exceeds dimension {s.size}")
        return float(np.sum(s[: norm.order]))
    if np.isinf(norm.order):
        return float(s[0])
    if s[0] == 0:
        return 0.0
    # factor out the largest value so s**p cannot overflow
    return float(s[0] * np.sum((s / s[0]) ** norm.order) ** (1.0 / norm.order))


def trace_of(a, imag_tol=1e-12):
    """Real trace; the imaginary residue must be below ``imag_tol`` times
    the sum of absolute diagonal entries."""
    d = np.diagonal(np.asarray(a))
    tr = np.sum(d)
    scale = max(float(np.sum(np.abs(d))), 1.0)
    if abs(np.imag(tr)) > imag_tol * scale:
        raise ValueError(f"trace has imaginary part {np.imag(tr):.3e}")
    return float(np.real(tr))
