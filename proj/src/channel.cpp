#include "wavephy/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavephy {

const char* channel_name(ChannelKind k) {
  return k == ChannelKind::Awgn ? "awgn" : "rayleigh";
}

ChannelSpec ChannelSpec::awgn(double snr_db) {
  ChannelSpec s;
  s.kind = ChannelKind::Awgn;
  s.snr_db = snr_db;
  return s;
}

ChannelSpec ChannelSpec::rayleigh_default(double snr_db) {
  ChannelSpec s;
  s.kind = ChannelKind::RayleighTdl;
  s.snr_db = snr_db;
  double total = 1.0 + 0.5 + 0.25 + 0.125;
  s.pdp = {{0, 1.0 / total}, {1, 0.5 / total}, {2, 0.25 / total}, {3, 0.125 / total}};
  return s;
}

ChannelSpec ChannelSpec::flat_rayleigh(double snr_db) {
  ChannelSpec s;
  s.kind = ChannelKind::RayleighTdl;
  s.snr_db = snr_db;
  s.pdp = {{0, 1.0}};
  return s;
}

void ChannelSpec::validate(int cp_len) const {
  if (kind == ChannelKind::RayleighTdl) {
    if (pdp.empty()) throw std::invalid_argument("RayleighTdl needs a PDP");
    double total = 0.0;
    for (const auto& tap : pdp) {
      if (tap.delay < 0 || tap.power < 0)
        throw std::invalid_argument("invalid PDP tap");
      if (tap.delay >= cp_len)
        throw std::invalid_argument("PDP delay spread must stay below cp_len");
      total += tap.power;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("PDP powers must sum to 1");
  }
}

int ChannelSpec::max_delay() const {
  int d = 0;
  for (const auto& tap : pdp) d = std::max(d, tap.delay);
  return d;
}

double noise_variance(double snr_db) {
  if (std::isinf(snr_db)) return 0.0;
  return std::pow(10.0, -snr_db / 10.0);
}

ChannelOutput apply(const std::vector<cplx>& samples, const ChannelSpec& spec,
                    int fft_size, std::mt19937_64& rng) {
  ChannelOutput out;
  std::normal_distribution<double> gauss(0.0, 1.0);

  if (spec.kind == ChannelKind::Awgn) {
    out.realization.taps = {cplx(1.0, 0.0)};
    out.samples = samples;
  } else {
    out.realization.taps.assign(spec.max_delay() + 1, cplx(0.0, 0.0));
    for (const auto& tap : spec.pdp) {
      double s = std::sqrt(tap.power / 2.0);
      out.realization.taps[tap.delay] += cplx(s * gauss(rng), s * gauss(rng));
    }
    const auto& h = out.realization.taps;
    out.samples.assign(samples.size(), cplx(0.0, 0.0));
    for (size_t i = 0; i < samples.size(); ++i) {
      cplx acc(0.0, 0.0);
      for (size_t d = 0; d < h.size() && d <= i; ++d)
        acc += h[d] * samples[i - d];
      out.samples[i] = acc;
    }
  }

  out.realization.freq.resize(fft_size);
  for (int k = 0; k < fft_size; ++k) {
    cplx acc(0.0, 0.0);
    for (size_t d = 0; d < out.realization.taps.size(); ++d) {
      double ang = -2.0 * std::numbers::pi * k * static_cast<double>(d) / fft_size;
      acc += out.realization.taps[d] * cplx(std::cos(ang), std::sin(ang));
    }
    out.realization.freq[k] = acc;
  }

  const double sigma2 = noise_variance(spec.snr_db);
  if (sigma2 > 0.0) {
    const double s = std::sqrt(sigma2 / 2.0);
    for (auto& v : out.samples) v += cplx(s * gauss(rng), s * gauss(rng));
  }
  return out;
}

double doppler_hz(double speed_kmh, double carrier_hz) {
  if (speed_kmh < 0) throw std::invalid_argument("speed must be >= 0");
  constexpr double c = 2.998e8;
  return (speed_kmh / 3.6) * carrier_hz / c;
}

}  // namespace wavephy
