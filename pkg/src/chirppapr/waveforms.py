"""OFDM, OCDM and AFDM modulators.

Convention: modulation maps symbol index ``k`` to time index ``n``,
``s_n = sum_k x_k g[k, n]``. Each waveform has two realizations:

* ``modulate`` / ``demodulate`` -- fast chirp * FFT * chirp pipelines, batched
  over leading axes;
* ``matrix(n)`` -- the dense modulator ``A`` with ``s = A @ x`` built entry
  by entry from ``g[k, n]``. ``demodulate`` applies ``A^H``.

For OCDM the discrete Fresnel transform is ``Phi = A^H`` and for AFDM the
discrete affine Fourier transform is ``Lambda = A^H``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import transforms as tf
from .errors import LengthMismatch, OddLength


@dataclass(frozen=True)
class AfdmParams:
    """Chirp parameters: ``c1`` multiplies k**2 (symbols), ``c2`` multiplies n**2 (time)."""

    c1: float = 0.1
    c2: float = 0.2

    def __post_init__(self):
        if self.c1 < 0:
            raise ValueError(f"c1 must be non-negative, got {self.c1}")


def c1_min(alpha_max: int, n: int) -> float:
    """Smallest c1 giving full diversity for max integer Doppler ``alpha_max``."""
    return (2 * alpha_max + 1) / (2 * n)


def oversample(s, factor: int) -> np.ndarray:
    """Band-limited interpolation by zero-padding the spectrum.

    Samples at multiples of ``factor`` equal the input samples.
    """
    s = np.asarray(s, dtype=np.complex128)
    if factor == 1:
        return s
    if factor < 1:
        raise ValueError("oversampling factor must be >= 1")
    n = s.shape[-1]
    spec = np.fft.fft(s, axis=-1)
    padded = np.zeros(s.shape[:-1] + (n * factor,), dtype=np.complex128)
    half = n // 2
    if n % 2:
        padded[..., : half + 1] = spec[..., : half + 1]
        padded[..., -half:] = spec[..., half + 1 :]
    else:
        # split the Nyquist bin so real inputs stay real
        padded[..., :half] = spec[..., :half]
        padded[..., half] = spec[..., half] / 2
        padded[..., -half] = spec[..., half] / 2
        padded[..., -half + 1 :] = spec[..., half + 1 :]
    return np.fft.ifft(padded, axis=-1) * factor


def _check_length(x, n: int | None = None) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim == 0 or x.shape[-1] < 1:
        raise LengthMismatch("expected a non-empty vector")
    if n is not None and x.shape[-1] != n:
        raise LengthMismatch(f"expected length {n}, got {x.shape[-1]}")
    return x


# --- OFDM ------------------------------------------------------------------

def ofdm_modulate(x) -> np.ndarray:
    return tf.dft(_check_length(x), inverse=True)


def ofdm_demodulate(s) -> np.ndarray:
    return tf.dft(_check_length(s))


# --- OCDM ------------------------------------------------------------------

_OCDM_PHASE = np.exp(1j * np.pi / 4)


def _check_even(x) -> np.ndarray:
    x = _check_length(x)
    if x.shape[-1] % 2:
        raise OddLength(f"OCDM needs an even number of samples, got {x.shape[-1]}")
    return x


def ocdm_modulate(x, alpha: int = 1) -> np.ndarray:
    """Chirp-multiplex ``x``: ``s_n = N^-1/2 sum_k x_k exp(-j*pi*alpha*(n-k)^2/N + j*pi/4)``.

    ``alpha=-1`` flips the chirp direction (used by chirp selection).
    """
    x = _check_even(x)
    n = x.shape[-1]
    if alpha not in (1, -1):
        raise ValueError("alpha must be +1 or -1")
    # (n-k)^2 = n^2 - 2nk + k^2, so the sum is chirp * DFT * chirp
    w = tf.chirp(n, alpha / (2 * n))
    if alpha == 1:
        core = tf.dft(x * w, inverse=True)
    else:
        core = tf.dft(x * w)
    return _OCDM_PHASE * w * core


def ocdm_demodulate(s, alpha: int = 1) -> np.ndarray:
    s = _check_even(s)
    n = s.shape[-1]
    if alpha not in (1, -1):
        raise ValueError("alpha must be +1 or -1")
    w = np.conj(tf.chirp(n, alpha / (2 * n)))
    t = s * w * np.conj(_OCDM_PHASE)
    core = tf.dft(t) if alpha == 1 else tf.dft(t, inverse=True)
    return w * core


def ocdm_matrix(n: int, alpha: int = 1) -> np.ndarray:
    """Dense OCDM modulator, ``A[n, k] = g[k, n]``."""
    if n % 2:
        raise OddLength(f"OCDM needs an even number of samples, got {n}")
    t = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    d = (t - k) ** 2 % (2 * n)
    return np.exp(-1j * np.pi * alpha * d / n + 1j * np.pi / 4) / np.sqrt(n)


# --- AFDM ------------------------------------------------------------------

def afdm_modulate(x, p: AfdmParams) -> np.ndarray:
    """``s_n = N^-1/2 sum_k x_k exp(2j*pi*(c1*k^2 + k*n/N + c2*n^2))``."""
    x = _check_length(x)
    if x.shape[-1] < 2:
        raise LengthMismatch("AFDM needs at least two samples")
    n = x.shape[-1]
    pre = np.conj(tf.chirp(n, p.c1))
    post = np.conj(tf.chirp(n, p.c2))
    return post * tf.dft(x * pre, inverse=True)


def afdm_demodulate(s, p: AfdmParams) -> np.ndarray:
    s = _check_length(s)
    n = s.shape[-1]
    return tf.chirp(n, p.c1) * tf.dft(s * tf.chirp(n, p.c2))


def afdm_matrix(n: int, p: AfdmParams) -> np.ndarray:
    t = np.arange(n, dtype=np.float64)[:, None]
    k = np.arange(n, dtype=np.float64)[None, :]
    phase = np.mod(p.c1 * k * k, 1.0) + np.mod(k * t / n, 1.0) + np.mod(p.c2 * t * t, 1.0)
    return np.exp(2j * np.pi * phase) / np.sqrt(n)


def ofdm_matrix(n: int) -> np.ndarray:
    t = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    return np.exp(2j * np.pi * (t * k % n) / n) / np.sqrt(n)


# --- waveform selectors ----------------------------------------------------

@dataclass(frozen=True)
class OFDM:
    label = "OFDM"

    def check(self, n: int) -> None:
        if n < 1:
            raise LengthMismatch("N must be positive")

    def modulate(self, x) -> np.ndarray:
        return ofdm_modulate(x)

    def demodulate(self, s) -> np.ndarray:
        return ofdm_demodulate(s)

    def matrix(self, n: int) -> np.ndarray:
        return ofdm_matrix(n)


@dataclass(frozen=True)
class OCDM:
    label = "OCDM"

    def check(self, n: int) -> None:
        if n < 2 or n % 2:
            raise OddLength(f"OCDM needs an even number of samples, got {n}")

    def modulate(self, x) -> np.ndarray:
        return ocdm_modulate(x)

    def demodulate(self, s) -> np.ndarray:
        return ocdm_demodulate(s)

    def matrix(self, n: int) -> np.ndarray:
        return ocdm_matrix(n)


@dataclass(frozen=True)
class AFDM:
    params: AfdmParams = AfdmParams()
    label = "AFDM"

    def check(self, n: int) -> None:
        if n < 2:
            raise LengthMismatch("AFDM needs at least two samples")

    def modulate(self, x) -> np.ndarray:
        return afdm_modulate(x, self.params)

    def demodulate(self, s) -> np.ndarray:
        return afdm_demodulate(s, self.params)

    def matrix(self, n: int) -> np.ndarray:
        return afdm_matrix(n, self.params)


WaveformKind = Union[OFDM, OCDM, AFDM]


def parse_waveform(name: str, params: AfdmParams | None = None) -> WaveformKind:
    key = name.strip().upper()
    if key == "OFDM":
        return OFDM()
    if key == "OCDM":
        return OCDM()
    if key == "AFDM":
        return AFDM(params or AfdmParams())
    raise ValueError(f"unknown waveform {name!r}")
