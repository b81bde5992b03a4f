"""802.11p OFDM baseband simulator: pilot-aided LS/MMSE channel estimation
and Monte Carlo BER sweeps."""

from wavephy._core import (  # noqa: F401
    BerRecord,
    ChannelKind,
    CodeRate,
    EstMethod,
    FftGeometry,
    Interpolation,
    Modulation,
    PilotScheme,
    conv_encode,
    csv_header,
    demap_hard,
    deinterleave,
    depuncture,
    derive_regular_pattern,
    doppler_hz,
    interleave,
    map_bits,
    max_unestimated_run,
    puncture,
    run_point,
    scramble,
    spectral_efficiency,
    to_csv_row,
    viterbi_decode,
)

__version__ = "0.1.0"
