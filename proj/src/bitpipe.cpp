#include "wavephy/bitpipe.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <stdexcept>

namespace wavephy {

BitVec scramble(const BitVec& bits, std::uint8_t init_state) {
  if ((init_state & 0x7f) == 0)
    throw std::invalid_argument("scrambler state must be nonzero");
  std::uint32_t state = init_state & 0x7f;
  BitVec out(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    std::uint32_t fb = ((state >> 6) ^ (state >> 3)) & 1u;
    state = ((state << 1) | fb) & 0x7f;
    out[i] = static_cast<std::uint8_t>(bits[i] ^ fb);
  }
  return out;
}

namespace {
constexpr std::uint32_t kG0 = 0x5b;  // 133 octal, current input in bit 6
constexpr std::uint32_t kG1 = 0x79;  // 171 octal
}  // namespace

BitVec conv_encode(const BitVec& bits) {
  BitVec out;
  out.reserve(bits.size() * 2);
  std::uint32_t state = 0;  // previous 6 inputs, most recent in bit 5
  for (std::uint8_t b : bits) {
    std::uint32_t reg = (static_cast<std::uint32_t>(b) << 6) | state;
    out.push_back(static_cast<std::uint8_t>(std::popcount(reg & kG0) & 1));
    out.push_back(static_cast<std::uint8_t>(std::popcount(reg & kG1) & 1));
    state = (reg >> 1) & 0x3f;
  }
  return out;
}

PunctureMap PunctureMap::for_rate(CodeRate r) {
  PunctureMap m;
  m.rate = r;
  switch (r) {
    case CodeRate::R12: m.keep = {1, 1}; break;
    case CodeRate::R23: m.keep = {1, 1, 1, 0}; break;
    case CodeRate::R34: m.keep = {1, 1, 0, 1, 0, 1}; break;
  }
  return m;
}

BitVec puncture(const BitVec& bits, const PunctureMap& map) {
  const size_t period = map.keep.size();
  if (bits.size() % period != 0)
    throw std::invalid_argument("puncture input not a multiple of the pattern period");
  BitVec out;
  out.reserve(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (map.keep[i % period]) out.push_back(bits[i]);
  }
  return out;
}

BitVec depuncture(const BitVec& bits, const PunctureMap& map) {
  const size_t period = map.keep.size();
  const size_t kept =
      static_cast<size_t>(std::count(map.keep.begin(), map.keep.end(), 1));
  if (bits.size() % kept != 0)
    throw std::invalid_argument("depuncture input not a multiple of the kept count");
  BitVec out;
  out.reserve(bits.size() / kept * period);
  size_t in = 0;
  while (in < bits.size()) {
    for (size_t j = 0; j < period; ++j) {
      if (map.keep[j]) {
        out.push_back(bits[in++]);
      } else {
        out.push_back(kErasure);
      }
    }
  }
  return out;
}

namespace {

// Transmit-side index map of the two 802.11a permutations: bit k of the
// input lands at position j of the output.
std::vector<int> interleave_map(int n_cbps, int n_bpsc) {
  const int s = std::max(n_bpsc / 2, 1);
  std::vector<int> pos(n_cbps);
  for (int k = 0; k < n_cbps; ++k) {
    int i = (n_cbps / 16) * (k % 16) + k / 16;
    int j = s * (i / s) + (i + n_cbps - (16 * i) / n_cbps) % s;
    pos[k] = j;
  }
  return pos;
}

void check_block(const BitVec& bits, Modulation mod) {
  const int n_bpsc = bits_per_symbol(mod);
  const int n = static_cast<int>(bits.size());
  if (n == 0 || n % 16 != 0 || n % n_bpsc != 0)
    throw std::invalid_argument("interleaver block length is not a valid N_CBPS");
}

}  // namespace

BitVec interleave(const BitVec& bits, Modulation mod) {
  check_block(bits, mod);
  auto map = interleave_map(static_cast<int>(bits.size()), bits_per_symbol(mod));
  BitVec out(bits.size());
  for (size_t k = 0; k < bits.size(); ++k) out[map[k]] = bits[k];
  return out;
}

BitVec deinterleave(const BitVec& bits, Modulation mod) {
  check_block(bits, mod);
  auto map = interleave_map(static_cast<int>(bits.size()), bits_per_symbol(mod));
  BitVec out(bits.size());
  for (size_t k = 0; k < bits.size(); ++k) out[k] = bits[map[k]];
  return out;
}

BitVec viterbi_decode(const BitVec& coded) {
  if (coded.size() % 2 != 0)
    throw std::invalid_argument("coded stream length must be even");
  const size_t steps = coded.size() / 2;
  constexpr int kStates = 64;
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 2;

  // Precomputed branch outputs for (state, input).
  static const auto branch = [] {
    std::array<std::array<std::uint8_t, 2>, kStates * 2> t{};
    for (int s = 0; s < kStates; ++s) {
      for (int b = 0; b < 2; ++b) {
        std::uint32_t reg = (static_cast<std::uint32_t>(b) << 6) | s;
        t[s * 2 + b] = {static_cast<std::uint8_t>(std::popcount(reg & kG0) & 1),
                        static_cast<std::uint8_t>(std::popcount(reg & kG1) & 1)};
      }
    }
    return t;
  }();

  std::vector<std::uint32_t> metric(kStates, kInf), next(kStates);
  metric[0] = 0;
  // survivors[t][state] = (prev_state << 1) | input
  std::vector<std::vector<std::uint8_t>> survivors(steps,
                                                   std::vector<std::uint8_t>(kStates));

  for (size_t t = 0; t < steps; ++t) {
    const std::uint8_t r0 = coded[2 * t];
    const std::uint8_t r1 = coded[2 * t + 1];
    std::fill(next.begin(), next.end(), kInf);
    auto& surv = survivors[t];
    for (int s = 0; s < kStates; ++s) {
      if (metric[s] >= kInf) continue;
      for (int b = 0; b < 2; ++b) {
        const auto& o = branch[s * 2 + b];
        std::uint32_t m = metric[s];
        if (r0 != kErasure && r0 != o[0]) ++m;
        if (r1 != kErasure && r1 != o[1]) ++m;
        const int ns = (s >> 1) | (b << 5);
        // Ties resolved in favor of the lowest predecessor state: states
        // are visited in ascending order, so strictly-less keeps the first.
        if (m < next[ns]) {
          next[ns] = m;
          surv[ns] = static_cast<std::uint8_t>((s << 1) | b);
        }
      }
    }
    metric.swap(next);
  }

  BitVec out(steps);
  int state = 0;  // tail-terminated: end in the zero state
  for (size_t t = steps; t-- > 0;) {
    const std::uint8_t sv = survivors[t][state];
    out[t] = sv & 1;
    state = sv >> 1;
  }
  return out;
}

}  // namespace wavephy
