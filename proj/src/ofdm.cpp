#include "wavephy/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavephy {

void fft_inplace(std::vector<cplx>& x, bool inverse) {
  const size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("FFT size must be a power of two");

  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / len;
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; ++j) {
        cplx u = x[i + j];
        cplx v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : x) v *= scale;
}

std::vector<cplx> fft(std::vector<cplx> x) {
  fft_inplace(x, false);
  return x;
}

std::vector<cplx> ifft(std::vector<cplx> x) {
  fft_inplace(x, true);
  return x;
}

std::vector<int> data_subcarriers(const PilotScheme& pilots, const FftGeometry& geom) {
  std::vector<int> out;
  out.reserve(geom.used_indices.size());
  for (int k : geom.used_indices) {
    if (!pilots.is_pilot(k)) out.push_back(k);
  }
  return out;
}

OfdmGrid reference_grid(const PilotScheme& pilots, const FftGeometry& geom) {
  OfdmGrid g(geom.fft_size);
  for (int k : geom.used_indices) g.roles[g.index(k)] = BinRole::Data;
  for (size_t i = 0; i < pilots.positions.size(); ++i) {
    int idx = g.index(pilots.positions[i]);
    g.roles[idx] = BinRole::Pilot;
    g.bins[idx] = pilots.values[i];
  }
  return g;
}

OfdmGrid assemble_grid(const std::vector<cplx>& data_symbols,
                       const PilotScheme& pilots, const FftGeometry& geom) {
  auto data = data_subcarriers(pilots, geom);
  if (data_symbols.size() != data.size())
    throw std::invalid_argument("data symbol count does not match data bin count");
  OfdmGrid g = reference_grid(pilots, geom);
  for (size_t i = 0; i < data.size(); ++i) g.at(data[i]) = data_symbols[i];
  return g;
}

std::vector<cplx> extract_data(const OfdmGrid& grid, const std::vector<int>& bins) {
  std::vector<cplx> out;
  out.reserve(bins.size());
  for (int k : bins) out.push_back(grid.at(k));
  return out;
}

std::vector<cplx> to_time(const OfdmGrid& grid) { return ifft(grid.bins); }

OfdmGrid to_freq(const std::vector<cplx>& samples) {
  OfdmGrid g(static_cast<int>(samples.size()));
  g.bins = fft(samples);
  return g;
}

std::vector<cplx> add_cp(const std::vector<cplx>& samples, int cp_len) {
  if (cp_len < 0 || cp_len >= static_cast<int>(samples.size()))
    throw std::invalid_argument("cp_len must be < symbol length");
  std::vector<cplx> out;
  out.reserve(samples.size() + cp_len);
  out.insert(out.end(), samples.end() - cp_len, samples.end());
  out.insert(out.end(), samples.begin(), samples.end());
  return out;
}

std::vector<cplx> remove_cp(const std::vector<cplx>& samples, int cp_len) {
  if (cp_len < 0 || cp_len >= static_cast<int>(samples.size()))
    throw std::invalid_argument("cp_len must be < sample count");
  return {samples.begin() + cp_len, samples.end()};
}

PreambleSpec PreambleSpec::ieee80211() {
  PreambleSpec p;
  p.short_seq.assign(64, cplx(0.0, 0.0));
  p.long_seq.assign(64, cplx(0.0, 0.0));

  // S_{-26..26}, nonzero on every 4th subcarrier, scaled by sqrt(13/6).
  static const int s_pos[] = {-24, -20, -16, -12, -8, -4, 4, 8, 12, 16, 20, 24};
  static const cplx s_val[] = {
      {1, 1},  {-1, -1}, {1, 1},  {-1, -1}, {-1, -1}, {1, 1},
      {-1, -1}, {-1, -1}, {1, 1},  {1, 1},  {1, 1},  {1, 1}};
  const double amp = std::sqrt(13.0 / 6.0);
  for (int i = 0; i < 12; ++i)
    p.short_seq[(s_pos[i] + 64) % 64] = amp * s_val[i];

  // L_{-26..26}, unit magnitude on all 52 used subcarriers.
  static const int l_val[53] = {
      1, 1, -1, -1, 1, 1, -1, 1, -1, 1, 1, 1, 1, 1, 1, -1, -1, 1, 1, -1,
      1, -1, 1, 1, 1, 1, 0, 1, -1, -1, 1, 1, -1, 1, -1, 1, -1, -1, -1, -1,
      -1, 1, 1, -1, -1, 1, -1, 1, -1, 1, 1, 1, 1};
  for (int k = -26; k <= 26; ++k)
    p.long_seq[(k + 64) % 64] = static_cast<double>(l_val[k + 26]);

  return p;
}

int PreambleSpec::length() const {
  return n_short_reps * (fft_size / 4) + gi2_len + 2 * fft_size;
}

std::vector<cplx> gen_preamble(const PreambleSpec& spec) {
  const int n = spec.fft_size;
  auto sts = ifft(spec.short_seq);  // periodic with period n/4
  auto lts = ifft(spec.long_seq);

  std::vector<cplx> out;
  out.reserve(spec.length());
  const int sts_len = spec.n_short_reps * (n / 4);
  for (int i = 0; i < sts_len; ++i) out.push_back(sts[i % n]);
  out.insert(out.end(), lts.end() - spec.gi2_len, lts.end());
  out.insert(out.end(), lts.begin(), lts.end());
  out.insert(out.end(), lts.begin(), lts.end());
  return out;
}

}  // namespace wavephy
