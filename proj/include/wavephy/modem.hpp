#pragma once

#include <vector>

#include "wavephy/bitpipe.hpp"
#include "wavephy/params.hpp"

namespace wavephy {

/// 1, 1/sqrt(2), 1/sqrt(10), 1/sqrt(42) — unit average symbol energy.
double norm_factor(Modulation m);

/// Full constellation indexed by the Gray-coded label (MSB-first bits
/// packed into an integer).
std::vector<cplx> constellation(Modulation m);

/// Gray-mapped, energy-normalized symbols per the 802.11a tables.
std::vector<cplx> map_bits(const BitVec& bits, Modulation m);

/// Nearest-point hard decision; ties resolve toward the positive
/// half-plane per axis.
BitVec demap_hard(const std::vector<cplx>& symbols, Modulation m);

}  // namespace wavephy
