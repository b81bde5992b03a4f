#include "wavephy/modem.hpp"

#include <cmath>
#include <stdexcept>

namespace wavephy {

namespace {

// Per-axis Gray levels indexed by the axis bit pattern (MSB first).
const double kAxis1[2] = {-1.0, 1.0};                    // 0, 1
const double kAxis2[4] = {-3.0, -1.0, 3.0, 1.0};         // 00, 01, 10, 11
const double kAxis3[8] = {-7.0, -5.0, -1.0, -3.0, 7.0, 5.0, 1.0, 3.0};

const double* axis_table(int bits_per_axis) {
  switch (bits_per_axis) {
    case 1: return kAxis1;
    case 2: return kAxis2;
    case 3: return kAxis3;
  }
  throw std::logic_error("unsupported axis width");
}

int axis_bits(Modulation m) {
  return m == Modulation::Bpsk ? 1 : bits_per_symbol(m) / 2;
}

// Nearest Gray level on one axis; ties resolve toward the positive level.
int slice_axis(double x, int bits_per_axis) {
  const double* tab = axis_table(bits_per_axis);
  const int n = 1 << bits_per_axis;
  int best = 0;
  double best_d = std::abs(x - tab[0]);
  for (int i = 1; i < n; ++i) {
    double d = std::abs(x - tab[i]);
    if (d < best_d || (d == best_d && tab[i] > tab[best])) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

double norm_factor(Modulation m) {
  switch (m) {
    case Modulation::Bpsk: return 1.0;
    case Modulation::Qpsk: return 1.0 / std::sqrt(2.0);
    case Modulation::Qam16: return 1.0 / std::sqrt(10.0);
    case Modulation::Qam64: return 1.0 / std::sqrt(42.0);
  }
  return 1.0;
}

std::vector<cplx> constellation(Modulation m) {
  const int bps = bits_per_symbol(m);
  const int n = 1 << bps;
  std::vector<cplx> points(n);
  BitVec bits(bps);
  for (int label = 0; label < n; ++label) {
    for (int b = 0; b < bps; ++b) bits[b] = (label >> (bps - 1 - b)) & 1;
    points[label] = map_bits(bits, m)[0];
  }
  return points;
}

std::vector<cplx> map_bits(const BitVec& bits, Modulation m) {
  const int bps = bits_per_symbol(m);
  if (bits.size() % bps != 0)
    throw std::invalid_argument("bit count not divisible by bits per symbol");
  const int ab = axis_bits(m);
  const double* tab = axis_table(ab);
  const double norm = norm_factor(m);

  std::vector<cplx> out;
  out.reserve(bits.size() / bps);
  for (size_t i = 0; i < bits.size(); i += bps) {
    int li = 0;
    for (int b = 0; b < ab; ++b) li = (li << 1) | bits[i + b];
    double im = 0.0;
    if (m != Modulation::Bpsk) {
      int lq = 0;
      for (int b = ab; b < bps; ++b) lq = (lq << 1) | bits[i + b];
      im = tab[lq];
    }
    out.emplace_back(tab[li] * norm, im * norm);
  }
  return out;
}

BitVec demap_hard(const std::vector<cplx>& symbols, Modulation m) {
  const int bps = bits_per_symbol(m);
  const int ab = axis_bits(m);
  const double inv_norm = 1.0 / norm_factor(m);

  BitVec out;
  out.reserve(symbols.size() * bps);
  for (const cplx& s : symbols) {
    int li = slice_axis(s.real() * inv_norm, ab);
    for (int b = ab - 1; b >= 0; --b) out.push_back((li >> b) & 1);
    if (m != Modulation::Bpsk) {
      int lq = slice_axis(s.imag() * inv_norm, ab);
      for (int b = ab - 1; b >= 0; --b) out.push_back((lq >> b) & 1);
    }
  }
  return out;
}

}  // namespace wavephy
