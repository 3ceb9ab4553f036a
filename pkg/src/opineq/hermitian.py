"""
Hermitian matrices and their functional calculus.

Matrices are plain :class:`numpy.ndarray` objects. Everything returned from
this module is exactly Hermitian (symmetrized after every computation) and
marked read-only.
"""
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DomainViolation,
    NotHermitian,
    NotPositiveDefinite,
    NotSquare,
)

__all__ = [
    "TolerancePolicy",
    "DEFAULT_TOL",
    "Spectral",
    "Comparison",
    "validate_hermitian",
    "eigh",
    "apply_scalar_function",
    "mean_conjugation",
    "loewner_compare",
    "spectrum_bounds",
    "spectral_norm",
    "require_pd",
    "hexp",
    "hlog",
    "hpow",
    "hinv",
]


@dataclass(frozen=True)
class TolerancePolicy:
    """Absolute and relative slack used when deciding ``X <= Y``.

    An inequality whose raw margin is ``margin`` holds when
    ``margin >= -(abs_tol + rel_tol * scale)``.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value}")

    def threshold(self, scale):
        return self.abs_tol + self.rel_tol * scale


DEFAULT_TOL = TolerancePolicy()


class Spectral(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class Comparison(NamedTuple):
    holds: bool
    margin: float
    scale: float


def _freeze(x):
    x.setflags(write=False)
    return x


def _symmetrize(x):
    return (x + x.conj().T) / 2


def _as_square(raw):
    a = np.asarray(raw)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise NotSquare(f"expected a non-empty square matrix, got shape {a.shape}")
    if np.iscomplexobj(a):
        return a.astype(np.complex128)
    return a.astype(np.float64)


def validate_hermitian(raw, tol=DEFAULT_TOL):
    """Return ``(M + M*)/2`` after checking that ``M`` is Hermitian.

    Parameters
    ----------
    raw : array_like, shape (n, n)
        Real or complex square matrix.
    tol : TolerancePolicy
        The largest entry of ``M - M*`` may not exceed
        ``abs_tol + rel_tol * max|M_ij|``.

    Returns
    -------
    ndarray
        Read-only Hermitian matrix (real dtype if the input was real).

    Raises
    ------
    NotSquare, NotHermitian
    """
    a = _as_square(raw)
    if not np.all(np.isfinite(a)):
        raise NotHermitian("matrix has non-finite entries")
    asym = np.max(np.abs(a - a.conj().T))
    scale = np.max(np.abs(a))
    if asym > tol.threshold(scale):
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds tolerance {tol.threshold(scale):.3e}")
    return _freeze(_symmetrize(a))


def eigh(a):
    """Spectral decomposition with ascending eigenvalues."""
    try:
        w, u = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return Spectral(w, u)


def _reconstruct(u, values):
    out = (u * values) @ u.conj().T
    return _freeze(_symmetrize(out))


def _check_domain(w, domain):
    if domain is None:
        return
    lo, hi = domain
    bad = w[(w <= lo) | (w >= hi)]
    if bad.size:
        raise DomainViolation(
            f"eigenvalue {bad[0]!r} outside the open interval ({lo}, {hi})", value=float(bad[0])
        )


def apply_scalar_function(a, f: Callable, domain: Optional[Tuple[float, float]] = None):
    """Evaluate ``f(A) = U diag(f(lambda_i)) U*``.

    ``f`` must accept a 1-d array of eigenvalues. ``domain`` is an open
    interval ``(lo, hi)`` that every eigenvalue has to lie in; pass ``None``
    to skip the check.
    """
    w, u = eigh(a)
    _check_domain(w, domain)
    fw = np.broadcast_to(np.asarray(f(w), dtype=float), w.shape)
    if not np.all(np.isfinite(fw)):
        raise DomainViolation("function produced non-finite values", value=float(w[~np.isfinite(fw)][0]))
    return _reconstruct(u, fw)


def hexp(a):
    return apply_scalar_function(a, np.exp)


def hlog(a):
    return apply_scalar_function(a, np.log, (0.0, np.inf))


def hpow(a, r):
    """``A**r`` for positive definite ``A`` (any real ``r``)."""
    if r == 1:
        return _freeze(_symmetrize(np.asarray(a)))
    return apply_scalar_function(a, lambda t: t**r, (0.0, np.inf))


def hinv(a):
    return apply_scalar_function(a, lambda t: 1.0 / t, (0.0, np.inf))


def require_pd(a, tol=DEFAULT_TOL, name="matrix"):
    """Return the spectral decomposition of ``a`` after checking it is PD.

    Eigenvalues within ``tol.abs_tol`` of zero are rejected, not clipped.
    """
    w, u = eigh(a)
    if w[0] <= tol.abs_tol:
        raise NotPositiveDefinite(
            f"{name} is not positive definite (min eigenvalue {w[0]!r})", min_eigenvalue=float(w[0])
        )
    return Spectral(w, u)


def mean_conjugation(a, b, g: Callable, tol=DEFAULT_TOL):
    """Compute ``A^{1/2} g(A^{-1/2} B A^{-1/2}) A^{1/2}``.

    Both square roots come from one eigendecomposition of ``A``. ``g`` must
    be positive on the spectrum of the inner congruence.

    Raises
    ------
    NotPositiveDefinite
        If ``A`` or ``B`` has an eigenvalue ``<= tol.abs_tol``.
    DomainViolation
        If ``g`` is non-positive (or raises) on the inner spectrum.
    """
    if np.shape(a) != np.shape(b):
        raise DimensionMismatch(f"shapes {np.shape(a)} and {np.shape(b)} differ")
    wa, ua = require_pd(a, tol, "A")
    require_pd(b, tol, "B")
    sqrt_w = np.sqrt(wa)
    a_half = (ua * sqrt_w) @ ua.conj().T
    a_mhalf = (ua / sqrt_w) @ ua.conj().T
    inner = _symmetrize(a_mhalf @ b @ a_mhalf)
    w, u = eigh(inner)
    gw = np.broadcast_to(np.asarray(g(w), dtype=float), w.shape)
    bad = ~(gw > 0) | ~np.isfinite(gw)
    if np.any(bad):
        raise DomainViolation(
            f"representing function is not positive at {w[bad][0]!r}", value=float(gw[bad][0])
        )
    middle = (u * gw) @ u.conj().T
    return _freeze(_symmetrize(a_half @ middle @ a_half))


def spectral_norm(a):
    """Largest absolute eigenvalue of a Hermitian matrix."""
    w = np.linalg.eigvalsh(a)
    return float(max(abs(w[0]), abs(w[-1])))


def loewner_compare(x, y, tol=DEFAULT_TOL):
    """Decide ``X <= Y`` in the Loewner order.

    Returns
    -------
    Comparison
        ``margin`` is the smallest eigenvalue of ``Y - X``; ``scale`` is
        ``max(||X||, ||Y||)`` in spectral norm, and ``holds`` is
        ``margin >= -(abs_tol + rel_tol * scale)``.
    """
    if np.shape(x) != np.shape(y):
        raise DimensionMismatch(f"shapes {np.shape(x)} and {np.shape(y)} differ")
    diff = _symmetrize(np.asarray(y) - np.asarray(x))
    margin = float(np.linalg.eigvalsh(diff)[0])
    scale = max(spectral_norm(x), spectral_norm(y))
    return Comparison(bool(margin >= -tol.threshold(scale)), margin, scale)


def spectrum_bounds(a):
    """``(lambda_min, lambda_max)`` of a Hermitian matrix."""
    w = np.linalg.eigvalsh(a)
    return float(w[0]), float(w[-1])
