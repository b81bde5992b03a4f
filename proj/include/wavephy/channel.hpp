#pragma once

#include <random>
#include <vector>

#include "wavephy/params.hpp"

namespace wavephy {

enum class ChannelKind { Awgn, RayleighTdl };

const char* channel_name(ChannelKind k);

struct PdpTap {
  int delay = 0;     // samples
  double power = 1;  // mean tap power
};

struct ChannelSpec {
  ChannelKind kind = ChannelKind::Awgn;
  double snr_db = 30.0;  // Es/N0 on used subcarriers; +inf disables noise
  double speed_kmh = 50.0;
  double carrier_hz = 5.9e9;
  std::vector<PdpTap> pdp;  // RayleighTdl only; powers sum to 1

  static ChannelSpec awgn(double snr_db);
  /// 4 exponentially decaying taps at delays {0,1,2,3}.
  static ChannelSpec rayleigh_default(double snr_db);
  static ChannelSpec flat_rayleigh(double snr_db);

  void validate(int cp_len) const;
  int max_delay() const;
};

/// Impulse response drawn for one frame and its frequency response on all
/// fft_size bins.
struct ChannelRealization {
  std::vector<cplx> taps;  // indexed by delay, dense up to max delay
  std::vector<cplx> freq;  // DFT of taps, zero-padded to fft_size
};

struct ChannelOutput {
  std::vector<cplx> samples;
  ChannelRealization realization;
};

/// Per-sample complex noise variance for a given Es/N0 (unitary FFT
/// convention: per-bin noise variance equals per-sample variance).
double noise_variance(double snr_db);

/// Block-fading application: RayleighTdl draws one tap set per call and
/// convolves, then AWGN is added at the configured SNR.
ChannelOutput apply(const std::vector<cplx>& samples, const ChannelSpec& spec,
                    int fft_size, std::mt19937_64& rng);

/// f_d = v * f_c / c
double doppler_hz(double speed_kmh, double carrier_hz);

}  // namespace wavephy
