#pragma once

#include <cstdint>
#include <vector>

#include "wavephy/params.hpp"

namespace wavephy {

using BitVec = std::vector<std::uint8_t>;

/// Erasure marker inserted by depuncture; ignored by the Viterbi metric.
inline constexpr std::uint8_t kErasure = 2;

/// 802.11 frame-synchronous scrambler, LFSR x^7 + x^4 + 1.
/// Self-inverse: applying it twice with the same state restores the input.
BitVec scramble(const BitVec& bits, std::uint8_t init_state);

/// Rate-1/2 convolutional encoder, K=7, generators 133/171 octal.
/// Starts from the all-zero state; the caller appends 6 tail zeros.
/// Output order per input bit: g0 then g1.
BitVec conv_encode(const BitVec& bits);

struct PunctureMap {
  CodeRate rate = CodeRate::R12;
  std::vector<std::uint8_t> keep;  // one period of the keep mask

  static PunctureMap for_rate(CodeRate r);
};

BitVec puncture(const BitVec& bits, const PunctureMap& map);
BitVec depuncture(const BitVec& bits, const PunctureMap& map);

/// Two-permutation 802.11a block interleaver over one OFDM symbol.
/// Block length must be a valid N_CBPS for the modulation.
BitVec interleave(const BitVec& bits, Modulation mod);
BitVec deinterleave(const BitVec& bits, Modulation mod);

/// Hard-decision Viterbi decode over the 64-state trellis, Hamming metric,
/// erasures contribute zero metric. Assumes a tail-terminated block and
/// tracebacks from the zero state. Returns bits.size()/2 decoded bits
/// (tail included; caller strips it).
BitVec viterbi_decode(const BitVec& coded);

}  // namespace wavephy
