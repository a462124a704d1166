import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chirppapr import waveforms as wv
from chirppapr.errors import LengthMismatch, OddLength
from chirppapr.metrics import papr_db, symbol_block

P = wv.AfdmParams(0.1, 0.2)


def rand_c(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def direct_afdm(x, c1, c2):
    n = len(x)
    return np.array([sum(x[k] * cmath.exp(2j * math.pi * (c1 * k * k + k * t / n + c2 * t * t))
                         for k in range(n)) / math.sqrt(n) for t in range(n)])


def direct_ocdm(x, alpha=1):
    n = len(x)
    return np.array([sum(x[k] * cmath.exp(-1j * math.pi * alpha * (t - k) ** 2 / n + 1j * math.pi / 4)
                         for k in range(n)) / math.sqrt(n) for t in range(n)])


def impulse(n):
    e = np.zeros(n, dtype=complex)
    e[0] = 1
    return e


# --- AFDM ---

def test_afdm_impulse_is_single_chirp():
    n = 16
    s = wv.afdm_modulate(impulse(n), P)
    expected = np.exp(2j * np.pi * 0.2 * np.arange(n) ** 2) / math.sqrt(n)
    np.testing.assert_allclose(s, expected, atol=1e-12)
    assert papr_db(s) <= 1e-10


def test_afdm_zero_chirps_is_idft():
    rng = np.random.default_rng(0)
    x = rand_c(rng, 32)
    np.testing.assert_allclose(wv.afdm_modulate(x, wv.AfdmParams(0, 0)), np.fft.ifft(x, norm="ortho"),
                               atol=1e-12)


def test_c1_rule():
    assert wv.c1_min(2, 64) == 5 / 128


@pytest.mark.parametrize("n", [2, 3, 8, 16, 64])
def test_afdm_fast_matches_direct(n):
    rng = np.random.default_rng(n)
    x = rand_c(rng, n)
    for c1, c2 in [(0.1, 0.2), (0.0, math.sqrt(2)), (5 / 128, 0.37)]:
        ref = direct_afdm(x, c1, c2)
        assert np.max(np.abs(wv.afdm_modulate(x, wv.AfdmParams(c1, c2)) - ref)) < 1e-9
        assert np.max(np.abs(wv.afdm_matrix(n, wv.AfdmParams(c1, c2)) @ x - ref)) < 1e-9


def test_afdm_round_trip_qpsk():
    x = symbol_block(11, 0, 1000, 64)
    back = wv.afdm_demodulate(wv.afdm_modulate(x, P), P)
    assert np.max(np.abs(back - x)) < 1e-9


def test_afdm_demodulate_constant_zero_chirp():
    s = np.ones(8, dtype=complex)
    np.testing.assert_allclose(wv.afdm_demodulate(s, wv.AfdmParams(0, 0)), impulse(8) * math.sqrt(8),
                               atol=1e-12)


def test_afdm_demodulates_impulse():
    np.testing.assert_allclose(wv.afdm_demodulate(wv.afdm_modulate(impulse(8), P), P), impulse(8),
                               atol=1e-12)


def test_afdm_rejects_bad_params():
    with pytest.raises(ValueError):
        wv.AfdmParams(-0.1, 0.2)
    with pytest.raises(LengthMismatch):
        wv.afdm_modulate([1.0], P)


def test_afdm_matrix_unitary_random_params():
    rng = np.random.default_rng(9)
    for n in (2, 4, 8, 16, 64):
        for _ in range(10):
            a = wv.afdm_matrix(n, wv.AfdmParams(*rng.uniform(0, 1, 2)))
            assert np.max(np.abs(a.conj().T @ a - np.eye(n))) <= 1e-10


# --- OCDM ---

def test_ocdm_impulse_constant_envelope():
    s = wv.ocdm_modulate(impulse(64))
    np.testing.assert_allclose(np.abs(s), 1 / 8, atol=1e-13)
    assert np.ptp(np.abs(s)) <= 1e-12


@pytest.mark.parametrize("n", [2, 4, 8, 64])
def test_dfnt_unitary(n):
    # oracle: Phi assembled entrywise from the chirp filter in pure Python
    g = np.array([[cmath.exp(-1j * math.pi * (t - k) ** 2 / n + 1j * math.pi / 4) / math.sqrt(n)
                   for t in range(n)] for k in range(n)])
    phi = g.conj()
    assert np.max(np.abs(phi.conj().T @ phi - np.eye(n))) < 1e-10
    np.testing.assert_allclose(wv.ocdm_matrix(n), g.T, atol=1e-12)


def test_dfnt_phi_phi_h_identity_16():
    phi = wv.ocdm_matrix(16).conj().T
    assert np.max(np.abs(phi @ phi.conj().T - np.eye(16))) < 1e-10


@pytest.mark.parametrize("n", [2, 8, 16, 64])
@pytest.mark.parametrize("alpha", [1, -1])
def test_ocdm_fast_matches_direct(n, alpha):
    rng = np.random.default_rng(n)
    x = rand_c(rng, n)
    ref = direct_ocdm(x, alpha)
    assert np.max(np.abs(wv.ocdm_modulate(x, alpha) - ref)) < 1e-9
    assert np.max(np.abs(wv.ocdm_matrix(n, alpha) @ x - ref)) < 1e-9


@pytest.mark.parametrize("alpha", [1, -1])
def test_ocdm_round_trip(alpha):
    rng = np.random.default_rng(1)
    x = rand_c(rng, 50, 64)
    assert np.max(np.abs(wv.ocdm_demodulate(wv.ocdm_modulate(x, alpha), alpha) - x)) < 1e-9
    np.testing.assert_allclose(wv.ocdm_demodulate(wv.ocdm_modulate(impulse(8))), impulse(8), atol=1e-12)


def test_ocdm_odd_length():
    with pytest.raises(OddLength):
        wv.ocdm_modulate(np.ones(7))
    with pytest.raises(OddLength):
        wv.ocdm_demodulate(np.ones(7))
    with pytest.raises(OddLength):
        wv.OCDM().check(9)


# --- OFDM ---

def test_ofdm_constant_input_papr_is_n():
    s = wv.ofdm_modulate(np.ones(64))
    assert abs(papr_db(s) - 10 * math.log10(64)) < 1e-9
    assert abs(papr_db(s) - 18.0618) < 1e-4


def test_ofdm_round_trip_and_energy():
    rng = np.random.default_rng(2)
    x = rand_c(rng, 64)
    s = wv.ofdm_modulate(x)
    assert abs(np.vdot(s, s).real - np.vdot(x, x).real) < 1e-10 * np.vdot(x, x).real
    np.testing.assert_allclose(wv.ofdm_demodulate(s), x, atol=1e-12)


# --- shared properties ---

WAVES = [wv.OFDM(), wv.OCDM(), wv.AFDM(P)]


@pytest.mark.parametrize("wf", WAVES, ids=lambda w: w.label)
@pytest.mark.parametrize("n", [2, 4, 8, 16, 64])
def test_modulator_matrices_unitary(wf, n):
    a = wf.matrix(n)
    assert np.max(np.abs(a.conj().T @ a - np.eye(n))) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(WAVES), st.sampled_from([2, 4, 16, 64]), st.integers(0, 2**32 - 1))
def test_papr_bounded_by_n(wf, n, seed):
    rng = np.random.default_rng(seed)
    s = wf.modulate(rand_c(rng, n))
    assert -1e-12 <= papr_db(s) <= 10 * math.log10(n) + 1e-9


@pytest.mark.parametrize("factor", [1, 2, 4])
def test_oversample_keeps_original_samples(factor):
    rng = np.random.default_rng(factor)
    s = rand_c(rng, 3, 16)
    up = wv.oversample(s, factor)
    assert up.shape == (3, 16 * factor)
    np.testing.assert_allclose(up[..., ::factor], s, atol=1e-12)


def test_oversample_real_stays_real():
    s = np.cos(2 * np.pi * np.arange(16) * 3 / 16)
    assert np.max(np.abs(wv.oversample(s, 4).imag)) < 1e-12


def test_parse_waveform():
    assert isinstance(wv.parse_waveform("ocdm"), wv.OCDM)
    assert wv.parse_waveform("AFDM", P).params == P
    with pytest.raises(ValueError):
        wv.parse_waveform("OTFS")
