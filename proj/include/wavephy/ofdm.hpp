#pragma once

#include <cstdint>
#include <vector>

#include "wavephy/params.hpp"

namespace wavephy {

/// In-place unitary radix-2 FFT (1/sqrt(N) both directions).
void fft_inplace(std::vector<cplx>& x, bool inverse);
std::vector<cplx> fft(std::vector<cplx> x);
std::vector<cplx> ifft(std::vector<cplx> x);

enum class BinRole : std::uint8_t { Null, Data, Pilot };

/// One OFDM symbol in the frequency domain: fft_size complex bins in FFT
/// order with a role label per bin. Signed subcarrier k lives at bin
/// (k + fft_size) % fft_size.
struct OfdmGrid {
  int fft_size = 64;
  std::vector<cplx> bins;
  std::vector<BinRole> roles;

  explicit OfdmGrid(int n = 64)
      : fft_size(n), bins(n, cplx(0.0, 0.0)), roles(n, BinRole::Null) {}

  int index(int k) const { return (k + fft_size) % fft_size; }
  cplx& at(int k) { return bins[index(k)]; }
  const cplx& at(int k) const { return bins[index(k)]; }
  BinRole role(int k) const { return roles[index(k)]; }
};

/// Data subcarriers of a (geometry, scheme) pair in ascending signed order.
std::vector<int> data_subcarriers(const PilotScheme& pilots, const FftGeometry& geom);

/// Data symbols onto data bins in ascending subcarrier order, pilot values
/// onto pilot bins, zeros elsewhere.
OfdmGrid assemble_grid(const std::vector<cplx>& data_symbols,
                       const PilotScheme& pilots, const FftGeometry& geom);

/// Grid holding only the known pilot values (the LS reference X).
OfdmGrid reference_grid(const PilotScheme& pilots, const FftGeometry& geom);

std::vector<cplx> extract_data(const OfdmGrid& grid, const std::vector<int>& bins);

std::vector<cplx> to_time(const OfdmGrid& grid);
OfdmGrid to_freq(const std::vector<cplx>& samples);

std::vector<cplx> add_cp(const std::vector<cplx>& samples, int cp_len);
std::vector<cplx> remove_cp(const std::vector<cplx>& samples, int cp_len);

/// Short/long training sequences and the preamble layout.
struct PreambleSpec {
  int fft_size = 64;
  int gi2_len = 32;
  int n_short_reps = 10;             // 10 x 16 samples
  std::vector<cplx> short_seq;       // S_k in FFT order
  std::vector<cplx> long_seq;        // L_k in FFT order

  static PreambleSpec ieee80211();
  int length() const;
};

/// STS (ten short repetitions) followed by GI2 + two identical LTS.
std::vector<cplx> gen_preamble(const PreambleSpec& spec);

}  // namespace wavephy
