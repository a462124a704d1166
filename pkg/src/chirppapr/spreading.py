"""Premodulation spreading of data symbols.

A spreading is a unitary matrix ``W`` applied before the waveform modulator,
``s = A @ (W @ x)``. Nothing besides ``s`` is produced: the receiver only
needs to know which spreading is configured.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import transforms as tf
from .errors import NonPowerOfTwoLength, StrideDoesNotDivide
from .waveforms import WaveformKind


@dataclass(frozen=True)
class NoSpreading:
    label = ""

    def check(self, n: int) -> None:
        pass

    def apply(self, x) -> np.ndarray:
        return np.array(x, dtype=np.complex128)

    def invert(self, y) -> np.ndarray:
        return np.array(y, dtype=np.complex128)

    def matrix(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.complex128)


@dataclass(frozen=True)
class WHT:
    label = "WHT"

    def check(self, n: int) -> None:
        if not tf.is_power_of_two(n):
            raise NonPowerOfTwoLength(f"WHT needs a power-of-two size, got {n}")

    def apply(self, x) -> np.ndarray:
        return tf.fwht(x)

    def invert(self, y) -> np.ndarray:
        return tf.fwht(y)

    def matrix(self, n: int) -> np.ndarray:
        return tf.hadamard_matrix(n).astype(np.complex128)


@dataclass(frozen=True)
class DCT:
    label = "DCT"

    def check(self, n: int) -> None:
        pass

    def apply(self, x) -> np.ndarray:
        return tf.dct2(x)

    def invert(self, y) -> np.ndarray:
        return tf.dct2(y, inverse=True)

    def matrix(self, n: int) -> np.ndarray:
        return tf.dct_matrix(n).astype(np.complex128)


@dataclass(frozen=True)
class ZC:
    """ZC-masked inverse DFT, ``y = F^H diag(z) x``.

    ``diagonal_only`` drops the DFT and applies the bare mask (an ablation:
    the mask alone cannot move energy between symbols).
    """

    u: int = 1
    convention: str = "m(m+1)"
    diagonal_only: bool = False
    label = "ZC"

    def check(self, n: int) -> None:
        tf.zc_sequence(n, self.u, self.convention)

    def _mask(self, n: int) -> np.ndarray:
        return tf.zc_sequence(n, self.u, self.convention)

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.complex128)
        masked = x * self._mask(x.shape[-1])
        if self.diagonal_only:
            return masked
        return tf.dft(masked, inverse=True)

    def invert(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.complex128)
        if not self.diagonal_only:
            y = tf.dft(y)
        return y * np.conj(self._mask(y.shape[-1]))

    def matrix(self, n: int) -> np.ndarray:
        mask = np.diag(self._mask(n))
        if self.diagonal_only:
            return mask
        return tf.dft_matrix(n, inverse=True) @ mask


@dataclass(frozen=True)
class InterleavedDFT:
    """``y = P F x`` with ``F`` the unitary kernel ``exp(+2j*pi*mk/N)/sqrt(N)``.

    ``stride=None`` picks :func:`transforms.default_stride` for the size at hand.
    """

    stride: int | None = None
    label = "IDFT"

    def _q(self, n: int) -> int:
        return tf.default_stride(n) if self.stride is None else self.stride

    def check(self, n: int) -> None:
        q = self._q(n)
        if q < 1 or n % q:
            raise StrideDoesNotDivide(f"stride Q={q} does not divide N={n}")

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.complex128)
        return tf.interleave(tf.dft(x, inverse=True), self._q(x.shape[-1]))

    def invert(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.complex128)
        return tf.dft(tf.interleave(y, self._q(y.shape[-1]), inverse=True))

    def matrix(self, n: int) -> np.ndarray:
        return tf.interleaver_matrix(n, self._q(n)) @ tf.dft_matrix(n, inverse=True)


SpreadingKind = Union[NoSpreading, WHT, DCT, ZC, InterleavedDFT]

ALL_SPREADINGS = ("WHT", "DCT", "ZC", "IDFT")


def parse_spreading(name: str, zc_root: int = 1, stride: int | None = None) -> SpreadingKind:
    key = name.strip().upper()
    if key in ("", "NONE"):
        return NoSpreading()
    if key == "WHT":
        return WHT()
    if key == "DCT":
        return DCT()
    if key == "ZC":
        return ZC(u=zc_root)
    if key == "IDFT":
        return InterleavedDFT(stride)
    raise ValueError(f"unknown spreading {name!r}")


def spread(x, kind: SpreadingKind) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    kind.check(x.shape[-1])
    return kind.apply(x)


def despread(y, kind: SpreadingKind) -> np.ndarray:
    y = np.asarray(y, dtype=np.complex128)
    kind.check(y.shape[-1])
    return kind.invert(y)


def transmit(x, kind: SpreadingKind, wf: WaveformKind) -> np.ndarray:
    """Spread, then modulate."""
    return wf.modulate(spread(x, kind))


def receive(s, kind: SpreadingKind, wf: WaveformKind) -> np.ndarray:
    return despread(wf.demodulate(s), kind)
