"""PAPR of chirp multicarrier waveforms (OCDM, AFDM) with premodulation spreading."""
from .baselines import (
    ClipConfig,
    PtsConfig,
    SlmConfig,
    chirp_select,
    clip_chirp,
    clip_filter,
    grouped_prechirp,
    pts,
    slm,
)
from .config import ExperimentConfig, load_config
from .harness import compare, energy_report, run_ccdf
from .metrics import (
    CcdfCurve,
    EnergyModel,
    RandomSource,
    analytic_ofdm_ccdf,
    ccdf,
    network_savings,
    papr_db,
    power_reduction_percent,
    qpsk_map,
    symbol_block,
    trial_symbols,
)
from .spreading import DCT, WHT, ZC, InterleavedDFT, NoSpreading, despread, receive, spread, transmit
from .transforms import chirp_diag, dct2, dft, fwht, interleave, zc_sequence
from .waveforms import (
    AFDM,
    OCDM,
    OFDM,
    AfdmParams,
    afdm_demodulate,
    afdm_modulate,
    c1_min,
    ocdm_demodulate,
    ocdm_modulate,
    ofdm_demodulate,
    ofdm_modulate,
)

__version__ = "0.1.0"
