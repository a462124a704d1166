"""Quick invariant checks runnable from the command line (``chirppapr selftest``)."""
from __future__ import annotations

import itertools

import numpy as np

from . import baselines as bl
from . import transforms as tf
from .metrics import analytic_ofdm_ccdf, papr_db, papr_linear, symbol_block
from .spreading import DCT, WHT, ZC, InterleavedDFT, NoSpreading, receive, transmit
from .waveforms import AFDM, OCDM, OFDM, AfdmParams

SIZES = (2, 4, 8, 16, 64)


def _unitary_error(w: np.ndarray) -> float:
    return float(np.max(np.abs(w.conj().T @ w - np.eye(w.shape[0]))))


def check_unitarity() -> bool:
    rng = np.random.default_rng(0)
    worst = 0.0
    for n in SIZES:
        mats = [k.matrix(n) for k in (WHT(), DCT(), ZC(1), InterleavedDFT())]
        mats += [OFDM().matrix(n), OCDM().matrix(n)]
        mats += [AFDM(AfdmParams(*rng.uniform(0, 1, 2))).matrix(n) for _ in range(10)]
        worst = max(worst, *(_unitary_error(m) for m in mats))
    return worst <= 1e-10


def check_round_trip() -> bool:
    x = symbol_block(1, 0, 200, 64)
    kinds = (WHT(), DCT(), ZC(1), InterleavedDFT())
    waves = (OFDM(), OCDM(), AFDM(AfdmParams(0.1, 0.2)))
    return all(
        np.max(np.abs(receive(transmit(x, k, w), k, w) - x)) <= 1e-9
        for k, w in itertools.product(kinds, waves)
    )


def check_fast_paths() -> bool:
    rng = np.random.default_rng(1)
    ok = True
    for n in (2, 8, 16, 64):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for w in (OFDM(), OCDM(), AFDM(AfdmParams(0.1, 0.2))):
            ok &= np.max(np.abs(w.modulate(x) - w.matrix(n) @ x)) <= 1e-9
        ok &= np.max(np.abs(tf.fwht(x) - tf.hadamard_matrix(n) @ x)) <= 1e-9
    return bool(ok)


def check_impulse_envelope() -> bool:
    e0 = np.zeros(64, dtype=complex)
    e0[0] = 1
    return papr_db(OCDM().modulate(e0)) <= 1e-10 and papr_db(AFDM().modulate(e0)) <= 1e-10


def check_baseline_identity() -> bool:
    x = symbol_block(2, 0, 200, 16)
    plain = papr_linear(OCDM().modulate(x))
    res = [
        bl.pts(x, OCDM(), bl.PtsConfig(4, (1, -1))).signal,
        bl.slm(x, OCDM(), NoSpreading(), bl.SlmConfig(4, 3)).signal,
        bl.chirp_select(x).signal,
    ]
    ok = all(np.all(papr_linear(s) <= plain * (1 + 1e-12)) for s in res)
    gps = bl.grouped_prechirp(x, 2, (0.2, 0.35), AfdmParams(0.1, 0.2)).signal
    ok &= np.all(papr_linear(gps) <= papr_linear(AFDM().modulate(x)) * (1 + 1e-12))
    return bool(ok)


def check_analytic_formula() -> bool:
    return abs(analytic_ofdm_ccdf(64, 8.0) - 0.10998) < 1e-4


CHECKS = {
    "unitarity": check_unitarity,
    "round-trip": check_round_trip,
    "fast-path": check_fast_paths,
    "impulse-envelope": check_impulse_envelope,
    "baseline-identity": check_baseline_identity,
    "analytic-ccdf": check_analytic_formula,
}


def run_selftest(echo=print) -> bool:
    passed = True
    for name, fn in CHECKS.items():
        try:
            ok = bool(fn())
        except Exception as exc:  # a crash is a failed check
            echo(f"FAIL {name}: {exc!r}")
            passed = False
            continue
        echo(f"{'PASS' if ok else 'FAIL'} {name}")
        passed &= ok
    return passed
