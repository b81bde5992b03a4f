#include "wavephy/params.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace wavephy {

FftGeometry FftGeometry::ieee80211p() {
  FftGeometry g;
  g.used_indices.reserve(52);
  for (int k = -26; k <= 26; ++k) {
    if (k != 0) g.used_indices.push_back(k);
  }
  return g;
}

void FftGeometry::validate() const {
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0)
    throw std::invalid_argument("fft_size must be a power of two >= 2");
  if (cp_len < 0 || cp_len >= fft_size)
    throw std::invalid_argument("cp_len must be in [0, fft_size)");
  if (!std::is_sorted(used_indices.begin(), used_indices.end()))
    throw std::invalid_argument("used_indices must be sorted");
  std::set<int> seen;
  for (int k : used_indices) {
    if (k == 0) throw std::invalid_argument("DC must stay null");
    if (k < -fft_size / 2 || k > fft_size / 2 - 1)
      throw std::invalid_argument("used index out of range");
    if (!seen.insert(k).second)
      throw std::invalid_argument("duplicate used index");
  }
  if (static_cast<int>(used_indices.size()) > fft_size - 1)
    throw std::invalid_argument("too many used subcarriers");
}

bool FftGeometry::is_used(int k) const {
  return std::binary_search(used_indices.begin(), used_indices.end(), k);
}

PilotScheme PilotScheme::standard4() {
  PilotScheme s;
  s.name = PilotPattern::Standard4;
  s.positions = {-21, -7, 7, 21};
  s.values = {1.0, 1.0, 1.0, -1.0};
  return s;
}

PilotScheme PilotScheme::extended6() {
  PilotScheme s;
  s.name = PilotPattern::Extended6;
  // the two added pilots activate the formerly-null guard-adjacent bins
  s.positions = {-27, -21, -7, 7, 21, 27};
  s.values = {1.0, 1.0, 1.0, 1.0, -1.0, 1.0};
  return s;
}

void PilotScheme::validate(const FftGeometry& geom) const {
  if (positions.size() != values.size())
    throw std::invalid_argument("pilot positions/values size mismatch");
  if (!std::is_sorted(positions.begin(), positions.end()))
    throw std::invalid_argument("pilot positions must be sorted");
  std::set<int> seen;
  int extension = 0;
  for (size_t i = 0; i < positions.size(); ++i) {
    int k = positions[i];
    if (k == 0) throw std::invalid_argument("pilot at DC is not a transmitted bin");
    if (k < -geom.fft_size / 2 || k > geom.fft_size / 2 - 1)
      throw std::invalid_argument("pilot position is not a transmitted bin");
    if (!seen.insert(k).second)
      throw std::invalid_argument("duplicate pilot position");
    if (!geom.is_used(k)) ++extension;
    if (std::abs(std::abs(values[i]) - 1.0) > 1e-12)
      throw std::invalid_argument("pilot values must have unit magnitude");
  }
  if (geom.n_used() + extension > geom.fft_size - 1)
    throw std::invalid_argument("pilot extension exceeds available bins");
}

bool PilotScheme::is_pilot(int k) const {
  return std::binary_search(positions.begin(), positions.end(), k);
}

const char* pattern_name(PilotPattern p) {
  switch (p) {
    case PilotPattern::Standard4: return "standard4";
    case PilotPattern::Regular4: return "regular4";
    case PilotPattern::Extended6: return "extended6";
    case PilotPattern::Custom: return "custom";
  }
  return "?";
}

int bits_per_symbol(Modulation m) {
  switch (m) {
    case Modulation::Bpsk: return 1;
    case Modulation::Qpsk: return 2;
    case Modulation::Qam16: return 4;
    case Modulation::Qam64: return 6;
  }
  return 0;
}

const char* modulation_name(Modulation m) {
  switch (m) {
    case Modulation::Bpsk: return "BPSK";
    case Modulation::Qpsk: return "QPSK";
    case Modulation::Qam16: return "16QAM";
    case Modulation::Qam64: return "64QAM";
  }
  return "?";
}

const char* code_rate_name(CodeRate r) {
  switch (r) {
    case CodeRate::R12: return "1/2";
    case CodeRate::R23: return "2/3";
    case CodeRate::R34: return "3/4";
  }
  return "?";
}

void McsScheme::validate() const {
  bool ok = false;
  switch (modulation) {
    case Modulation::Bpsk:
    case Modulation::Qpsk:
    case Modulation::Qam16:
      ok = (code_rate == CodeRate::R12 || code_rate == CodeRate::R34);
      break;
    case Modulation::Qam64:
      ok = (code_rate == CodeRate::R23 || code_rate == CodeRate::R34);
      break;
  }
  if (!ok) throw std::invalid_argument("invalid modulation/code-rate combination");
}

std::string McsScheme::name() const {
  return std::string(modulation_name(modulation)) + "-" + code_rate_name(code_rate);
}

std::vector<McsScheme> all_mcs() {
  return {
      {Modulation::Bpsk, CodeRate::R12},  {Modulation::Bpsk, CodeRate::R34},
      {Modulation::Qpsk, CodeRate::R12},  {Modulation::Qpsk, CodeRate::R34},
      {Modulation::Qam16, CodeRate::R12}, {Modulation::Qam16, CodeRate::R34},
      {Modulation::Qam64, CodeRate::R23}, {Modulation::Qam64, CodeRate::R34},
  };
}

namespace {

// Transmitted bins: the geometry's used indices plus any pilot-activated
// extension bins, in ascending order.
std::vector<int> transmitted_bins(const FftGeometry& geom, const PilotScheme& pilots) {
  std::set<int> bins(geom.used_indices.begin(), geom.used_indices.end());
  for (int p : pilots.positions) bins.insert(p);
  return {bins.begin(), bins.end()};
}

int run_over_list(const std::vector<int>& bins, const std::vector<int>& pilot_positions) {
  int best = 0, cur = 0;
  for (int k : bins) {
    if (std::binary_search(pilot_positions.begin(), pilot_positions.end(), k)) {
      cur = 0;
    } else {
      best = std::max(best, ++cur);
    }
  }
  return best;
}

}  // namespace

int max_unestimated_run(const FftGeometry& geom, const PilotScheme& pilots) {
  geom.validate();
  pilots.validate(geom);
  return run_over_list(transmitted_bins(geom, pilots), pilots.positions);
}

PilotScheme derive_regular_pattern(const FftGeometry& geom, int n_pilots) {
  geom.validate();
  const int n = geom.n_used();
  if (n_pilots < 1 || n_pilots > n)
    throw std::invalid_argument("n_pilots must be in [1, n_used]");

  const auto& used = geom.used_indices;
  int best_run = n + 1, best_sym = -1, best_offset = 0;
  std::vector<int> best_pos;

  const int max_stride = (n_pilots == 1) ? 1 : (n - 1) / (n_pilots - 1);
  for (int stride = 1; stride <= max_stride; ++stride) {
    const int span = (n_pilots - 1) * stride;
    for (int offset = 0; offset + span < n; ++offset) {
      std::vector<int> pos(n_pilots);
      for (int i = 0; i < n_pilots; ++i) pos[i] = used[offset + i * stride];
      int run = run_over_list(used, pos);
      int sym = 0;
      for (int p : pos)
        if (std::binary_search(pos.begin(), pos.end(), -p)) ++sym;
      if (run < best_run || (run == best_run && sym > best_sym) ||
          (run == best_run && sym == best_sym && offset < best_offset)) {
        best_run = run;
        best_sym = sym;
        best_offset = offset;
        best_pos = std::move(pos);
      }
    }
  }

  PilotScheme s;
  s.name = (n_pilots == 4) ? PilotPattern::Regular4 : PilotPattern::Custom;
  s.positions = std::move(best_pos);
  s.values.assign(n_pilots, cplx(1.0, 0.0));
  return s;
}

double SpectralEfficiency::ratio() const {
  return n_used > 0 ? static_cast<double>(n_pilots) / n_used : 0.0;
}

double SpectralEfficiency::ratio_incl_pilots() const {
  int denom = n_data + n_pilots;
  return denom > 0 ? static_cast<double>(n_pilots) / denom : 0.0;
}

SpectralEfficiency spectral_efficiency_pilots(const PilotScheme& pilots,
                                              const FftGeometry& geom) {
  geom.validate();
  if (!pilots.positions.empty()) pilots.validate(geom);
  SpectralEfficiency sef;
  sef.n_pilots = static_cast<int>(pilots.positions.size());
  sef.n_used = geom.n_used();
  int pilots_in_used = 0;
  for (int p : pilots.positions)
    if (geom.is_used(p)) ++pilots_in_used;
  sef.n_data = geom.n_used() - pilots_in_used;
  return sef;
}

}  // namespace wavephy
