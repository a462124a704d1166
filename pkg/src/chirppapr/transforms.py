"""Unitary transforms and deterministic sequences.

Every vector operation acts on the last axis, so a ``(trials, N)`` array is
processed row by row in a single call. Inputs are never modified in place.

The ``*_matrix`` helpers build the dense N x N realization straight from the
kernel formula. They are the O(N^2) reference the fast paths are checked
against, so they deliberately share no code with them.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import fft as sfft

from .errors import NonPowerOfTwoLength, RootNotCoprime, StrideDoesNotDivide


def _as_complex(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim == 0 or v.shape[-1] < 1:
        raise ValueError("expected a non-empty vector")
    return v


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


# --- DFT -------------------------------------------------------------------

def dft(v, inverse: bool = False) -> np.ndarray:
    """Unitary DFT along the last axis (forward kernel ``exp(-2j*pi*nk/N)``)."""
    v = _as_complex(v)
    if inverse:
        return np.fft.ifft(v, axis=-1, norm="ortho")
    return np.fft.fft(v, axis=-1, norm="ortho")


def dft_matrix(n: int, inverse: bool = False) -> np.ndarray:
    sign = 1.0 if inverse else -1.0
    k = np.arange(n)
    return np.exp(sign * 2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)


# --- Walsh-Hadamard --------------------------------------------------------

def fwht(v) -> np.ndarray:
    """Normalized fast Walsh-Hadamard transform, ``H_N v / sqrt(N)``.

    Natural (Sylvester) ordering. The normalized transform is its own
    inverse.
    """
    v = _as_complex(v)
    n = v.shape[-1]
    if not is_power_of_two(n):
        raise NonPowerOfTwoLength(f"Hadamard matrix needs a power-of-two size, got {n}")
    lead = v.shape[:-1]
    y = v.copy()
    h = 1
    while h < n:
        # pair element i with i + h inside each block of 2h
        blocks = y.reshape(*lead, n // (2 * h), 2, h)
        a = blocks[..., 0, :].copy()
        b = blocks[..., 1, :]
        blocks[..., 0, :] = a + b
        blocks[..., 1, :] = a - b
        h *= 2
    return y / np.sqrt(n)


def hadamard_matrix(n: int) -> np.ndarray:
    """Sylvester Hadamard matrix with ``1/sqrt(N)`` normalization."""
    if not is_power_of_two(n):
        raise NonPowerOfTwoLength(f"Hadamard matrix needs a power-of-two size, got {n}")
    i = np.arange(n)
    # H[r, c] = (-1)^popcount(r & c)
    bits = np.bitwise_and.outer(i, i)
    parity = np.zeros_like(bits)
    while bits.any():
        parity ^= bits & 1
        bits = bits >> 1
    return (1.0 - 2.0 * parity) / np.sqrt(n)


# --- DCT-II ----------------------------------------------------------------

def dct2(v, inverse: bool = False) -> np.ndarray:
    """Orthonormal DCT-II along the last axis; ``inverse`` applies the transpose.

    The matrix is real, so complex input is transformed linearly (real and
    imaginary parts separately).
    """
    v = _as_complex(v)
    if inverse:
        return sfft.idct(v, type=2, norm="ortho", axis=-1)
    return sfft.dct(v, type=2, norm="ortho", axis=-1)


def dct_matrix(n: int) -> np.ndarray:
    k = np.arange(n)[:, None]
    m = np.arange(n)[None, :]
    alpha = np.where(k == 0, 1 / np.sqrt(2), 1.0)
    return np.sqrt(2.0 / n) * alpha * np.cos(np.pi * (2 * m + 1) * k / (2 * n))


# --- Zadoff-Chu ------------------------------------------------------------

ZC_CONVENTIONS = ("m(m+1)", "m2")


def zc_sequence(n: int, u: int, convention: str = "m(m+1)") -> np.ndarray:
    """Zadoff-Chu root sequence ``exp(-j*pi*u*m*(m+1)/N)``.

    ``convention="m2"`` uses ``m**2`` in the exponent instead; that variant
    reproduces the 2x2 tabulated mask ``diag(1, -j)``.
    """
    if n < 1:
        raise ValueError("sequence length must be positive")
    if math.gcd(u, n) != 1:
        raise RootNotCoprime(f"root u={u} shares a factor with N={n}")
    m = np.arange(n, dtype=np.int64)
    if convention == "m(m+1)":
        q = m * (m + 1)
    elif convention == "m2":
        q = m * m
    else:
        raise ValueError(f"unknown ZC convention {convention!r}")
    # reduce the integer exponent mod 2N before going to floating point
    q = (u * q) % (2 * n)
    return np.exp(-1j * np.pi * q / n)


# --- chirps ----------------------------------------------------------------

def chirp(n: int, c: float) -> np.ndarray:
    """Diagonal of the chirp matrix: ``exp(-2j*pi*c*k**2)``, k = 0..N-1."""
    k = np.arange(n, dtype=np.float64)
    return np.exp(-2j * np.pi * np.mod(c * k * k, 1.0))


def chirp_diag(n: int, c: float) -> np.ndarray:
    return np.diag(chirp(n, c))


# --- interleaver -----------------------------------------------------------

def default_stride(n: int) -> int:
    """sqrt(N) for perfect squares, otherwise the largest divisor below sqrt(N)."""
    r = math.isqrt(n)
    for q in range(r, 0, -1):
        if n % q == 0:
            return q
    return 1


def interleaver_permutation(n: int, q: int) -> np.ndarray:
    """Row-column block interleaver, ``pi(i) = (i mod Q)*(N/Q) + i//Q``."""
    if q < 1 or n % q:
        raise StrideDoesNotDivide(f"stride Q={q} does not divide N={n}")
    i = np.arange(n)
    return (i % q) * (n // q) + i // q


def interleave(v, q: int, inverse: bool = False) -> np.ndarray:
    """Permute the last axis: forward gathers ``out[i] = v[pi(i)]``."""
    v = _as_complex(v)
    perm = interleaver_permutation(v.shape[-1], q)
    if inverse:
        out = np.empty_like(v)
        out[..., perm] = v
        return out
    return v[..., perm]


def interleaver_matrix(n: int, q: int) -> np.ndarray:
    perm = interleaver_permutation(n, q)
    p = np.zeros((n, n))
    p[np.arange(n), perm] = 1.0
    return p
