#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace wavephy {

using cplx = std::complex<double>;

/// Subcarrier layout of one OFDM symbol. Defaults match the 802.11p
/// 10 MHz channelization: 64-bin FFT, 52 used subcarriers (DC null),
/// 16-sample cyclic prefix.
struct FftGeometry {
  int fft_size = 64;
  std::vector<int> used_indices;  // sorted signed indices, DC excluded
  int cp_len = 16;
  double subcarrier_spacing_hz = 156.25e3;

  static FftGeometry ieee80211p();

  void validate() const;
  int n_used() const { return static_cast<int>(used_indices.size()); }
  bool is_used(int k) const;
};

enum class PilotPattern { Standard4, Regular4, Extended6, Custom };

/// Pilot subcarrier positions and their (unit-magnitude) values.
/// Positions may activate bins outside used_indices (Extended6 turns on
/// two formerly null guard-adjacent bins).
struct PilotScheme {
  PilotPattern name = PilotPattern::Custom;
  std::vector<int> positions;  // sorted signed indices
  std::vector<cplx> values;    // one per position, |v| == 1

  static PilotScheme standard4();
  static PilotScheme extended6();

  void validate(const FftGeometry& geom) const;
  bool is_pilot(int k) const;
};

const char* pattern_name(PilotPattern p);

enum class Modulation { Bpsk, Qpsk, Qam16, Qam64 };
enum class CodeRate { R12, R23, R34 };

int bits_per_symbol(Modulation m);
const char* modulation_name(Modulation m);
const char* code_rate_name(CodeRate r);

/// One of the eight 802.11p modulation/rate combinations.
struct McsScheme {
  Modulation modulation = Modulation::Bpsk;
  CodeRate code_rate = CodeRate::R12;

  void validate() const;
  std::string name() const;
};

std::vector<McsScheme> all_mcs();

/// Length of the longest run of consecutive transmitted, non-pilot
/// subcarriers (consecutive in the ordered index list; the DC gap does
/// not break a run).
int max_unestimated_run(const FftGeometry& geom, const PilotScheme& pilots);

/// Uniformly spaced (offset, stride) pilot placement over the ordered
/// used-index list minimizing max_unestimated_run. Ties go to the most
/// DC-symmetric pattern, then to the smallest leading offset.
PilotScheme derive_regular_pattern(const FftGeometry& geom, int n_pilots);

struct SpectralEfficiency {
  int n_pilots = 0;
  int n_used = 0;  // denominator: used subcarriers of the geometry
  int n_data = 0;

  double ratio() const;              // n_pilots / n_used
  double ratio_incl_pilots() const;  // n_pilots / (n_data + n_pilots)
};

SpectralEfficiency spectral_efficiency_pilots(const PilotScheme& pilots,
                                              const FftGeometry& geom);

}  // namespace wavephy
