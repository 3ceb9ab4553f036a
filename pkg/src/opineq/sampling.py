"""
Seeded random Hermitian matrices satisfying spectral hypotheses.

Random streams come from numpy's counter-based ``Philox`` (4x64, 10 rounds)
bit generator. The 128-bit key is ``(master, trial_index)`` and the upper
half of the 256-bit counter carries an optional ``stream`` label, so every
trial draws from its own stream no matter which process runs it or in what
order. Do not change this construction without bumping the package version:
reports record the seed and rely on it to be reproducible.
"""
import zlib
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .constants import FourPointBounds, RatioBounds, SandwichBounds

__all__ = [
    "SamplerSeed",
    "stream_label",
    "generator",
    "haar_unitary",
    "hermitian_with_spectrum",
    "sandwich_pair",
    "bounded_pair",
    "ratio_pair",
]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SamplerSeed:
    master: int
    trial_index: int = 0
    stream: int = 0

    def __post_init__(self):
        for name in ("master", "trial_index", "stream"):
            value = getattr(self, name)
            if not 0 <= value <= _MASK64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {value}")


def stream_label(*parts):
    """Stable 64-bit label for a tuple of strings/ints (CRC32 based)."""
    text = "/".join(str(p) for p in parts).encode()
    return (zlib.crc32(text) << 32) | zlib.crc32(text[::-1])


def generator(seed: Union[SamplerSeed, np.random.Generator]) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    counter = [0, 0, seed.stream, 0]
    bitgen = np.random.Philox(key=[seed.master, seed.trial_index], counter=counter)
    return np.random.Generator(bitgen)


def haar_unitary(n, seed):
    """Haar-distributed ``n x n`` unitary.

    QR of a complex Ginibre matrix, with the phases of ``diag(R)`` moved into
    ``Q`` so that the distribution is exactly Haar.
    """
    rng = generator(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def hermitian_with_spectrum(n, lo, hi, seed, force_endpoints=False):
    """``U diag(lambda) U*`` with ``lambda_i`` uniform on ``[lo, hi]``.

    With ``force_endpoints`` (and ``n >= 2``) the extreme eigenvalues are
    exactly ``lo`` and ``hi``.
    """
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    rng = generator(seed)
    lam = np.sort(rng.uniform(lo, hi, size=n))
    if force_endpoints and n >= 2:
        lam[0], lam[-1] = lo, hi
    u = haar_unitary(n, rng)
    a = (u * lam) @ u.conj().T
    a = (a + a.conj().T) / 2
    a.setflags(write=False)
    return a


def sandwich_pair(n, bounds: FourPointBounds, seed, force_endpoints=False) -> Tuple[np.ndarray, np.ndarray]:
    """``A`` with spectrum in ``[m2, m1]`` and ``B`` in ``[M1, M2]``, in
    independent Haar frames."""
    rng = generator(seed)
    a = hermitian_with_spectrum(n, bounds.m2, bounds.m1, rng, force_endpoints)
    b = hermitian_with_spectrum(n, bounds.M1, bounds.M2, rng, force_endpoints)
    return a, b


def bounded_pair(n, bounds: SandwichBounds, seed, force_endpoints=False):
    """Two independent matrices with spectra in ``[m, M]``."""
    rng = generator(seed)
    a = hermitian_with_spectrum(n, bounds.m, bounds.M, rng, force_endpoints)
    b = hermitian_with_spectrum(n, bounds.m, bounds.M, rng, force_endpoints)
    return a, b


def ratio_pair(n, bounds: RatioBounds, a_spec, seed, force_endpoints=False):
    """``(A, B)`` with ``s A <= B <= t A`` built as ``B = A^{1/2} C A^{1/2}``
    where ``C`` has spectrum in ``[s, t]``."""
    lo, hi = a_spec
    if not 0 < lo <= hi:
        raise ValueError(f"A spectrum must satisfy 0 < lo <= hi, got {a_spec}")
    rng = generator(seed)
    w = rng.uniform(lo, hi, size=n)
    if force_endpoints and n >= 2:
        w = np.sort(w)
        w[0], w[-1] = lo, hi
    u = haar_unitary(n, rng)
    c = hermitian_with_spectrum(n, bounds.s, bounds.t, rng, force_endpoints)
    a = (u * w) @ u.conj().T
    a_half = (u * np.sqrt(w)) @ u.conj().T
    b = a_half @ c @ a_half
    a = (a + a.conj().T) / 2
    b = (b + b.conj().T) / 2
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b
