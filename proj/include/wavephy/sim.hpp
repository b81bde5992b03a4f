#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavephy/channel.hpp"
#include "wavephy/estimator.hpp"
#include "wavephy/params.hpp"

namespace wavephy {

/// Full parameterization of one link.
struct PhyConfig {
  FftGeometry geometry = FftGeometry::ieee80211p();
  PilotScheme pilots = PilotScheme::standard4();
  McsScheme mcs;
  ChannelSpec channel = ChannelSpec::awgn(30.0);
  EstMethod estimator = EstMethod::Mmse;
  Interpolation interpolation = Interpolation::Linear;
  EstSource source = EstSource::CombPilots;
  std::uint64_t total_bits = 100000;
  std::uint64_t rng_seed = 1;
  int frame_symbols = 16;
  bool uncoded = false;  // bypass scrambler/coder/interleaver

  void validate() const;
  int n_data_subcarriers() const;
  int n_cbps() const;
  int n_dbps() const;  // info bits per OFDM symbol after coding
};

struct BerRecord {
  double snr_db = 0.0;
  Modulation modulation = Modulation::Bpsk;
  CodeRate code_rate = CodeRate::R12;
  std::string pilot_scheme;
  EstMethod estimator = EstMethod::Ls;
  ChannelKind channel = ChannelKind::Awgn;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t seed = 0;
  int max_unestimated_run = 0;
  double sef = 0.0;
  double ebn0_db = 0.0;
  std::string error;  // empty on success

  double ber() const { return bits ? static_cast<double>(bit_errors) / bits : 0.0; }
};

/// End-to-end Monte Carlo of one sweep point. Deterministic in
/// (config, snr_db, config.rng_seed).
BerRecord run_point(const PhyConfig& config, double snr_db);

struct SweepPlan {
  PhyConfig base;
  std::vector<double> snr_points_db;
  std::vector<std::pair<PilotScheme, EstMethod>> schemes;
  std::vector<McsScheme> mcs_list;
  std::uint64_t bits_per_point = 100000;

  void validate() const;
  size_t n_points() const;
};

/// One record per (mcs, scheme, snr), in that nesting order. Points run
/// concurrently; output order and values do not depend on thread count.
/// Point i uses an independent stream derived from (base.rng_seed, i).
std::vector<BerRecord> run_sweep(const SweepPlan& plan, unsigned threads = 0);

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

std::string csv_header();
std::string to_csv_row(const BerRecord& r);

}  // namespace wavephy
