"""
Unital positive linear maps and Ando's inequality.

Only maps whose positivity and unitality are certified by construction are
offered: the identity, the diagonal pinching, compressions ``V* A V`` by an
isometry, and equal-weight unitary mixtures.
"""
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .errors import DimensionMismatch, NotIsometry
from .hermitian import DEFAULT_TOL
from .means import evaluate_mean
from .results import loewner_result
from .sampling import generator, haar_unitary

__all__ = [
    "Identity",
    "DiagonalPinching",
    "Compression",
    "UnitaryMixture",
    "apply_map",
    "map_from_token",
    "check_ando",
]


def _hermitize(x):
    x = (x + x.conj().T) / 2
    x.setflags(write=False)
    return x


class _Map:
    token = ""

    def output_dim(self, n):
        return n

    def __call__(self, a):
        return apply_map(self, a)


@dataclass(frozen=True)
class Identity(_Map):
    token = "identity"

    def _apply(self, a):
        return np.array(a)


@dataclass(frozen=True)
class DiagonalPinching(_Map):
    token = "pinch"

    def _apply(self, a):
        return np.diag(np.diagonal(a))


@dataclass(frozen=True, eq=False)
class Compression(_Map):
    """``A -> V* A V`` for an ``n x k`` isometry ``V``."""

    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v)
        if v.ndim != 2 or v.shape[1] > v.shape[0]:
            raise NotIsometry(f"expected an n x k matrix with k <= n, got shape {v.shape}")
        k = v.shape[1]
        if np.linalg.norm(v.conj().T @ v - np.eye(k)) > 1e-12 * max(k, 1) ** 0.5 * 10:
            raise NotIsometry("V* V differs from the identity")

    @property
    def token(self):
        return f"compress:{self.v.shape[1]}"

    def output_dim(self, n):
        return self.v.shape[1]

    def _apply(self, a):
        if a.shape[0] != self.v.shape[0]:
            raise DimensionMismatch(f"V has {self.v.shape[0]} rows, A is {a.shape[0]}x{a.shape[0]}")
        return self.v.conj().T @ a @ self.v


@dataclass(frozen=True, eq=False)
class UnitaryMixture(_Map):
    """``A -> (1/N) sum U_i* A U_i``."""

    unitaries: Tuple[np.ndarray, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.unitaries:
            raise ValueError("need at least one unitary")

    @property
    def token(self):
        return f"umix:{len(self.unitaries)}"

    def _apply(self, a):
        if a.shape != self.unitaries[0].shape:
            raise DimensionMismatch(f"unitaries are {self.unitaries[0].shape}, A is {a.shape}")
        return sum(u.conj().T @ a @ u for u in self.unitaries) / len(self.unitaries)


def apply_map(phi, a):
    return _hermitize(np.asarray(phi._apply(np.asarray(a))))


def map_from_token(token, n, seed):
    """Build the map named by a CLI token for ``n x n`` inputs.

    ``compress:k`` and ``umix:N`` draw their isometry/unitaries from
    ``seed``.

    Raises
    ------
    ValueError
        Unknown token, or ``compress:k`` with ``k > n``.
    """
    name, _, arg = token.strip().lower().partition(":")
    if name == "identity" and not arg:
        return Identity()
    if name == "pinch" and not arg:
        return DiagonalPinching()
    if name == "compress":
        k = int(arg)
        if not 1 <= k <= n:
            raise ValueError(f"compress:{k} needs 1 <= k <= {n}")
        return Compression(haar_unitary(n, generator(seed))[:, :k])
    if name == "umix":
        count = int(arg)
        if count < 1:
            raise ValueError("umix:N needs N >= 1")
        rng = generator(seed)
        return UnitaryMixture(tuple(haar_unitary(n, rng) for _ in range(count)))
    raise ValueError(f"unknown map token {token!r}")


def check_ando(phi, a, b, mean, tol=DEFAULT_TOL):
    """Loewner check of ``Phi(A sigma B) <= Phi(A) sigma Phi(B)``."""
    if not 0 <= mean.v <= 1:
        raise ValueError(f"Ando's inequality needs v in [0, 1], got {mean.v}")
    lhs = apply_map(phi, evaluate_mean(a, b, mean, tol))
    rhs = evaluate_mean(apply_map(phi, a), apply_map(phi, b), mean, tol)
    params = {"map": phi.token, "mean": str(mean), "dim": a.shape[0], "out_dim": lhs.shape[0]}
    return loewner_result("ando", "", params, lhs, rhs, tol)
