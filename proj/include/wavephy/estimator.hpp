#pragma once

#include <vector>

#include "wavephy/channel.hpp"
#include "wavephy/ofdm.hpp"
#include "wavephy/params.hpp"

namespace wavephy {

enum class EstMethod { Ls, Mmse, Perfect };
enum class Interpolation { Linear, DftBased };
enum class EstSource { CombPilots, LtsBlock };

const char* estimator_name(EstMethod m);

struct ChannelEstimate {
  std::vector<int> bins;        // sorted signed subcarriers
  std::vector<cplx> response;   // one per bin
  EstMethod method = EstMethod::Ls;
  EstSource source = EstSource::CombPilots;
};

/// Per-subcarrier LS: H_k = Y_k / X_k at the requested bins.
ChannelEstimate ls_estimate(const OfdmGrid& rx, const OfdmGrid& ref,
                            const std::vector<int>& at);

/// Precomputed LMMSE smoothing weights for a fixed (PDP, sigma2, bin set):
/// W = R (R + sigma2 I)^{-1} with R the channel frequency correlation from
/// the tap powers (uncorrelated scattering, diagonal R_gg).
struct MmseContext {
  std::vector<int> bins;
  std::vector<cplx> weights;  // row-major, |bins| x |bins|
  double sigma2 = 0.0;

  static MmseContext build(const std::vector<PdpTap>& pdp, double sigma2,
                           const std::vector<int>& bins, int fft_size,
                           bool regularize = false, double cond_limit = 1e12);
};

ChannelEstimate mmse_estimate(const ChannelEstimate& ls, const MmseContext& ctx);

/// Expand a partial estimate to out_bins. Linear: complex interpolation in
/// list order with nearest-value extrapolation past the edge pilots.
/// DftBased: least-squares delay-domain fit truncated to cp_len taps.
ChannelEstimate interpolate(const ChannelEstimate& partial, Interpolation method,
                            const std::vector<int>& out_bins, int fft_size,
                            int cp_len);

struct EqualizedData {
  std::vector<cplx> symbols;
  std::vector<std::uint8_t> flagged;  // estimate magnitude below floor
};

/// Zero-forcing division on the data bins; bins whose estimate magnitude
/// falls below 1e-6 of the RMS magnitude are flagged but still emitted.
EqualizedData equalize(const OfdmGrid& rx, const ChannelEstimate& full,
                       const std::vector<int>& data_bins);

}  // namespace wavephy
