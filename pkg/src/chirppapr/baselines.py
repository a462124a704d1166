"""Conventional PAPR-reduction comparators.

The selection methods (PTS, SLM, chirp selection, grouped pre-chirp) build
every candidate of a finite search space, measure its PAPR and keep the
minimum. Inputs may carry leading batch axes; the search runs per row.
``np.argmin`` returns the first minimum, so ties go to the lowest
candidate index. Each result also reports how many candidates were
evaluated per input vector.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import transforms as tf
from .errors import GroupMismatch, OddLength, SubblockMismatch
from .metrics import RandomSource, papr_linear
from .spreading import NoSpreading, SpreadingKind, transmit
from .waveforms import AfdmParams, WaveformKind, afdm_modulate, ocdm_modulate, oversample


class SearchResult(NamedTuple):
    signal: np.ndarray
    choice: np.ndarray
    evaluations: int


def _pick(candidates: np.ndarray, factor: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Minimum-PAPR candidate along axis -2 of ``(..., C, N)``."""
    score = papr_linear(oversample(candidates, factor))
    idx = np.argmin(score, axis=-1)
    best = np.take_along_axis(candidates, idx[..., None, None], axis=-2)[..., 0, :]
    return best, idx


# --- clipping --------------------------------------------------------------

@dataclass(frozen=True)
class ClipConfig:
    """``beta``: clip amplitude. ``cutoff``: kept fraction of the band, None = no filter."""

    beta: float
    cutoff: float | None = None

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("clipping threshold must be positive")
        if self.cutoff is not None and not 0 < self.cutoff <= 1:
            raise ValueError("filter cutoff must lie in (0, 1]")


def clip(s, beta: float) -> np.ndarray:
    s = np.asarray(s, dtype=np.complex128)
    mag = np.abs(s)
    over = mag > beta
    out = s.copy()
    out[over] = beta * s[over] / mag[over]
    return out


def lowpass(s, cutoff: float) -> np.ndarray:
    """Brick-wall filter keeping normalized frequencies ``|f| <= cutoff / 2``."""
    s = np.asarray(s, dtype=np.complex128)
    f = np.fft.fftfreq(s.shape[-1])
    spec = np.fft.fft(s, axis=-1)
    spec[..., np.abs(f) > cutoff / 2 + 1e-12] = 0
    return np.fft.ifft(spec, axis=-1)


def clip_filter(s, cfg: ClipConfig) -> np.ndarray:
    out = clip(s, cfg.beta)
    if cfg.cutoff is not None:
        out = lowpass(out, cfg.cutoff)
    return out


# --- PTS -------------------------------------------------------------------

@dataclass(frozen=True)
class PtsConfig:
    subblocks: int = 4
    phases: tuple = (1, -1, 1j, -1j)
    partition: str = "contiguous"

    def __post_init__(self):
        if self.subblocks < 1:
            raise ValueError("PTS needs at least one subblock")
        ph = np.asarray(self.phases, dtype=np.complex128)
        if not np.allclose(np.abs(ph), 1.0, atol=1e-12):
            raise ValueError("PTS weights must have unit modulus")
        if not np.any(np.isclose(ph, 1.0, atol=1e-12)):
            raise ValueError("PTS phase set must contain +1")
        if self.partition not in ("contiguous", "interleaved"):
            raise ValueError(f"unknown partition {self.partition!r}")

    def check(self, n: int) -> None:
        if n % self.subblocks:
            raise SubblockMismatch(f"M={self.subblocks} subblocks do not divide N={n}")

    def weight_table(self) -> np.ndarray:
        """All weight vectors, first weight pinned to +1: shape ``(B**(M-1), M)``."""
        rows = [(1,) + combo for combo in itertools.product(self.phases, repeat=self.subblocks - 1)]
        return np.asarray(rows, dtype=np.complex128)

    def masks(self, n: int) -> np.ndarray:
        self.check(n)
        m = self.subblocks
        owner = np.arange(n) // (n // m) if self.partition == "contiguous" else np.arange(n) % m
        return (owner[None, :] == np.arange(m)[:, None]).astype(np.complex128)


def pts(x, wf: WaveformKind, cfg: PtsConfig, factor: int = 1) -> SearchResult:
    """Partial transmit sequences; ``choice`` holds the chosen weight vector(s)."""
    x = np.asarray(x, dtype=np.complex128)
    masks = cfg.masks(x.shape[-1])
    partial = wf.modulate(x[..., None, :] * masks)
    weights = cfg.weight_table()
    candidates = np.einsum("cm,...mn->...cn", weights, partial)
    best, idx = _pick(candidates, factor)
    return SearchResult(best, weights[idx], len(weights))


# --- SLM -------------------------------------------------------------------

@dataclass(frozen=True)
class SlmConfig:
    """``candidates`` phase sequences drawn from {0, pi/2, pi, 3pi/2}.

    Sequence ``u`` comes from the Philox stream keyed by ``seed`` at index
    ``u``; sequence 0 is all zeros. A prefix of a larger table is therefore
    the smaller table.
    """

    candidates: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.candidates < 1:
            raise ValueError("SLM needs at least one candidate")

    def phase_table(self, n: int) -> np.ndarray:
        table = np.zeros((self.candidates, n))
        for u in range(1, self.candidates):
            quarter = RandomSource(self.seed, u).generator().integers(0, 4, size=n)
            table[u] = quarter * (np.pi / 2)
        return table


def slm(x, wf: WaveformKind, kind: SpreadingKind = NoSpreading(), cfg: SlmConfig = SlmConfig(),
        factor: int = 1) -> SearchResult:
    """Selected mapping; ``choice`` is the winning candidate index."""
    x = np.asarray(x, dtype=np.complex128)
    rot = np.exp(1j * cfg.phase_table(x.shape[-1]))
    candidates = transmit(x[..., None, :] * rot, kind, wf)
    best, idx = _pick(candidates, factor)
    return SearchResult(best, idx, cfg.candidates)


# --- chirp selection -------------------------------------------------------

def chirp_select(x, factor: int = 1) -> SearchResult:
    """OCDM with down (+1) or up (-1) chirps, whichever has lower PAPR."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape[-1] % 2:
        raise OddLength(f"OCDM needs an even number of samples, got {x.shape[-1]}")
    candidates = np.stack([ocdm_modulate(x, 1), ocdm_modulate(x, -1)], axis=-2)
    best, idx = _pick(candidates, factor)
    return SearchResult(best, np.where(idx == 0, 1, -1), 2)


# --- grouped pre-chirp -----------------------------------------------------

def grouped_prechirp(x, groups: int, c2_candidates: Sequence[float], p: AfdmParams,
                     factor: int = 1) -> SearchResult:
    """AFDM with one c2 per contiguous subcarrier group, searched exhaustively.

    ``choice`` holds the chosen c2 value per group.
    """
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[-1]
    if groups < 1 or n % groups:
        raise GroupMismatch(f"G={groups} groups do not divide N={n}")
    values = np.asarray(list(c2_candidates), dtype=np.float64)
    if values.size == 0:
        raise ValueError("c2 candidate set is empty")
    owner = np.arange(n) // (n // groups)
    masks = (owner[None, :] == np.arange(groups)[:, None]).astype(np.complex128)
    # c2 = 0 partials; each group's c2 is a time-domain chirp on its partial
    partial = afdm_modulate(x[..., None, :] * masks, AfdmParams(p.c1, 0.0))
    post = np.conj(np.stack([tf.chirp(n, c) for c in values]))  # (L, N)
    assign = np.asarray(list(itertools.product(range(values.size), repeat=groups)))
    # (C, G, N) chirp per group per assignment
    chirps = post[assign]
    candidates = np.einsum("cgn,...gn->...cn", chirps, partial)
    best, idx = _pick(candidates, factor)
    return SearchResult(best, values[assign[idx]], len(assign))


def clip_chirp(x, groups: int, c2_candidates: Sequence[float], p: AfdmParams, cfg: ClipConfig,
               factor: int = 1) -> SearchResult:
    """One-pass approximation of clipping with chirp optimization.

    Grouped pre-chirp selection followed by :func:`clip_filter`; there is no
    iterative refinement of chirp parameters.
    """
    res = grouped_prechirp(x, groups, c2_candidates, p, factor)
    return SearchResult(clip_filter(res.signal, cfg), res.choice, res.evaluations)
