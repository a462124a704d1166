"""Published PAPR readouts used as soft reference points in run reports.

Keys are curve labels, values map a CCDF level to PAPR0 in dB. Entries are
only listed where a single value per curve was published.
"""

LEVELS = (1e-1, 1e-2, 1e-3)
SOFT_BAND_DB = 1.0

CCDF_READOUTS = {
    "OFDM": {1e-3: 9.6, 1e-2: 8.2, 1e-1: 6.2},
    "OCDM": {1e-3: 9.2, 1e-2: 7.8, 1e-1: 5.8},
    "OCDM+WHT": {1e-3: 7.9},
    "OCDM+DCT": {1e-3: 7.8},
    "OCDM+ZC": {1e-3: 7.7},
    # quoted as a 2.2 dB gain over plain OCDM at 1e-3
    "OCDM+IDFT": {1e-3: 7.0},
    "AFDM": {1e-3: 9.8, 1e-2: 8.4, 1e-1: 6.4},
    "AFDM+WHT": {1e-3: 8.3},
    "AFDM+DCT": {1e-3: 8.2},
    "AFDM+ZC": {1e-3: 8.1},
    "AFDM+IDFT": {1e-3: 7.4, 1e-2: 6.0, 1e-1: 4.0},
}

CCDF_GAINS = {
    "OCDM+IDFT": {1e-3: 2.2},
    "AFDM+IDFT": {1e-3: 2.4},
}

COMPARE_READOUTS = {
    "OCDM": {1e-3: 9.4},
    "OCDM+PTS": {1e-3: 8.5},
    "OCDM+SLM": {1e-3: 8.5},
    "OCDM+CHIRP": {1e-3: 8.5},
    "OCDM+IDFT": {1e-3: 7.8},
    "AFDM": {1e-3: 9.8},
    "AFDM+PTS": {1e-3: 8.2},
    "AFDM+SLM": {1e-3: 8.2},
    "AFDM+GPS": {1e-3: 8.2},
    "AFDM+IDFT": {1e-3: 7.7},
}

COMPARE_GAINS = {
    "OCDM+IDFT": {1e-3: 1.6},
    "AFDM+IDFT": {1e-3: 2.1},
}
