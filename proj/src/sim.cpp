#include "wavephy/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <thread>

#include "wavephy/bitpipe.hpp"
#include "wavephy/modem.hpp"
#include "wavephy/ofdm.hpp"

namespace wavephy {

namespace {
constexpr std::uint8_t kScrambleInit = 0x7f;
constexpr int kTailBits = 6;

double code_rate_value(CodeRate r) {
  switch (r) {
    case CodeRate::R12: return 0.5;
    case CodeRate::R23: return 2.0 / 3.0;
    case CodeRate::R34: return 0.75;
  }
  return 0.5;
}
}  // namespace

void PhyConfig::validate() const {
  geometry.validate();
  pilots.validate(geometry);
  mcs.validate();
  channel.validate(geometry.cp_len);
  if (total_bits == 0) throw std::invalid_argument("total_bits must be > 0");
  if (frame_symbols < 1) throw std::invalid_argument("frame_symbols must be >= 1");
  const int cbps = n_cbps();
  if (cbps % 16 != 0)
    throw std::invalid_argument("data subcarrier count incompatible with interleaver");
  if (!uncoded && static_cast<std::uint64_t>(frame_symbols) *
                          static_cast<std::uint64_t>(n_dbps()) <=
                      kTailBits)
    throw std::invalid_argument("frame too short for tail bits");
}

int PhyConfig::n_data_subcarriers() const {
  int pilots_in_used = 0;
  for (int p : pilots.positions)
    if (geometry.is_used(p)) ++pilots_in_used;
  return geometry.n_used() - pilots_in_used;
}

int PhyConfig::n_cbps() const {
  return n_data_subcarriers() * bits_per_symbol(mcs.modulation);
}

int PhyConfig::n_dbps() const {
  const int cbps = n_cbps();
  switch (mcs.code_rate) {
    case CodeRate::R12: return cbps / 2;
    case CodeRate::R23: return cbps * 2 / 3;
    case CodeRate::R34: return cbps * 3 / 4;
  }
  return cbps / 2;
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct Receiver {
  const PhyConfig& cfg;
  std::vector<int> data_bins;
  std::vector<int> est_bins;   // where the raw estimate is formed
  std::vector<int> full_bins;  // where the equalizer needs it
  OfdmGrid ref;
  PreambleSpec preamble = PreambleSpec::ieee80211();
  MmseContext mmse;
  bool has_mmse = false;

  explicit Receiver(const PhyConfig& c, double sigma2) : cfg(c) {
    data_bins = data_subcarriers(c.pilots, c.geometry);
    ref = reference_grid(c.pilots, c.geometry);

    if (c.source == EstSource::LtsBlock) {
      est_bins = c.geometry.used_indices;
    } else {
      est_bins = c.pilots.positions;
    }
    {
      std::vector<int> all(c.geometry.used_indices);
      for (int p : c.pilots.positions)
        if (!c.geometry.is_used(p)) all.push_back(p);
      std::sort(all.begin(), all.end());
      full_bins = std::move(all);
    }

    if (c.estimator == EstMethod::Mmse) {
      auto pdp = (c.channel.kind == ChannelKind::RayleighTdl)
                     ? c.channel.pdp
                     : std::vector<PdpTap>{{0, 1.0}};
      mmse = MmseContext::build(pdp, sigma2, est_bins, c.geometry.fft_size,
                                /*regularize=*/true);
      has_mmse = true;
    }
  }

  ChannelEstimate estimate_comb(const OfdmGrid& rx) const {
    ChannelEstimate est = ls_estimate(rx, ref, est_bins);
    if (has_mmse) est = mmse_estimate(est, mmse);
    return interpolate(est, cfg.interpolation, full_bins, cfg.geometry.fft_size,
                       cfg.geometry.cp_len);
  }

  ChannelEstimate estimate_lts(const std::vector<cplx>& lts_avg) const {
    OfdmGrid rx = to_freq(lts_avg);
    OfdmGrid lref(cfg.geometry.fft_size);
    lref.bins = preamble.long_seq;
    ChannelEstimate est = ls_estimate(rx, lref, est_bins);
    est.source = EstSource::LtsBlock;
    if (has_mmse) est = mmse_estimate(est, mmse);
    if (est.bins == full_bins) return est;
    return interpolate(est, cfg.interpolation, full_bins, cfg.geometry.fft_size,
                       cfg.geometry.cp_len);
  }

  ChannelEstimate estimate_perfect(const ChannelRealization& real) const {
    ChannelEstimate est;
    est.method = EstMethod::Perfect;
    est.bins = full_bins;
    est.response.reserve(full_bins.size());
    for (int k : full_bins)
      est.response.push_back(real.freq[(k + cfg.geometry.fft_size) %
                                       cfg.geometry.fft_size]);
    return est;
  }
};

}  // namespace

BerRecord run_point(const PhyConfig& config, double snr_db) {
  PhyConfig cfg = config;
  cfg.channel.snr_db = snr_db;
  cfg.validate();

  const int n_data = cfg.n_data_subcarriers();
  const int bps = bits_per_symbol(cfg.mcs.modulation);
  const int cbps = cfg.n_cbps();
  const std::uint64_t payload_per_frame =
      cfg.uncoded
          ? static_cast<std::uint64_t>(cfg.frame_symbols) * cbps
          : static_cast<std::uint64_t>(cfg.frame_symbols) * cfg.n_dbps() - kTailBits;

  const double sigma2 = noise_variance(snr_db);
  Receiver rx_ctx(cfg, sigma2);
  const auto punct = PunctureMap::for_rate(cfg.mcs.code_rate);
  const auto preamble_samples = gen_preamble(rx_ctx.preamble);
  const int n = cfg.geometry.fft_size;
  const int cp = cfg.geometry.cp_len;

  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_int_distribution<int> coin(0, 1);

  std::uint64_t bits_done = 0, errors = 0;
  while (bits_done < cfg.total_bits) {
    BitVec payload(payload_per_frame);
    for (auto& b : payload) b = static_cast<std::uint8_t>(coin(rng));

    // transmit chain
    BitVec tx_bits;
    if (cfg.uncoded) {
      tx_bits = payload;
    } else {
      BitVec scrambled = scramble(payload, kScrambleInit);
      scrambled.insert(scrambled.end(), kTailBits, 0);
      BitVec coded = conv_encode(scrambled);
      BitVec punctured = puncture(coded, punct);
      tx_bits.reserve(punctured.size());
      for (int s = 0; s < cfg.frame_symbols; ++s) {
        BitVec block(punctured.begin() + static_cast<size_t>(s) * cbps,
                     punctured.begin() + static_cast<size_t>(s + 1) * cbps);
        BitVec il = interleave(block, cfg.mcs.modulation);
        tx_bits.insert(tx_bits.end(), il.begin(), il.end());
      }
    }

    std::vector<cplx> frame = preamble_samples;
    frame.reserve(preamble_samples.size() +
                  static_cast<size_t>(cfg.frame_symbols) * (n + cp));
    for (int s = 0; s < cfg.frame_symbols; ++s) {
      BitVec sym_bits(tx_bits.begin() + static_cast<size_t>(s) * cbps,
                      tx_bits.begin() + static_cast<size_t>(s + 1) * cbps);
      auto symbols = map_bits(sym_bits, cfg.mcs.modulation);
      auto grid = assemble_grid(symbols, cfg.pilots, cfg.geometry);
      auto t = add_cp(to_time(grid), cp);
      frame.insert(frame.end(), t.begin(), t.end());
    }

    auto chan = apply(frame, cfg.channel, n, rng);

    // receive chain
    ChannelEstimate frame_est;
    bool have_frame_est = false;
    if (cfg.estimator == EstMethod::Perfect) {
      frame_est = rx_ctx.estimate_perfect(chan.realization);
      have_frame_est = true;
    } else if (cfg.source == EstSource::LtsBlock) {
      const size_t lts_off = preamble_samples.size() - 2 * n;
      std::vector<cplx> avg(n);
      for (int i = 0; i < n; ++i)
        avg[i] = 0.5 * (chan.samples[lts_off + i] + chan.samples[lts_off + n + i]);
      frame_est = rx_ctx.estimate_lts(avg);
      have_frame_est = true;
    }

    BitVec rx_bits;
    rx_bits.reserve(tx_bits.size());
    size_t off = preamble_samples.size();
    for (int s = 0; s < cfg.frame_symbols; ++s) {
      std::vector<cplx> sym(chan.samples.begin() + off,
                            chan.samples.begin() + off + cp + n);
      off += cp + n;
      OfdmGrid grid = to_freq(remove_cp(sym, cp));
      // comb estimates are formed per symbol; LTS/perfect once per frame
      ChannelEstimate sym_est;
      if (!have_frame_est) sym_est = rx_ctx.estimate_comb(grid);
      const ChannelEstimate& est = have_frame_est ? frame_est : sym_est;
      auto eq = equalize(grid, est, rx_ctx.data_bins);
      BitVec demapped = demap_hard(eq.symbols, cfg.mcs.modulation);
      if (cfg.uncoded) {
        rx_bits.insert(rx_bits.end(), demapped.begin(), demapped.end());
      } else {
        BitVec deil = deinterleave(demapped, cfg.mcs.modulation);
        rx_bits.insert(rx_bits.end(), deil.begin(), deil.end());
      }
    }

    BitVec decoded;
    if (cfg.uncoded) {
      decoded = std::move(rx_bits);
    } else {
      BitVec depunct = depuncture(rx_bits, punct);
      BitVec info = viterbi_decode(depunct);
      info.resize(info.size() - kTailBits);
      decoded = scramble(info, kScrambleInit);
    }

    const std::uint64_t take =
        std::min<std::uint64_t>(payload_per_frame, cfg.total_bits - bits_done);
    for (std::uint64_t i = 0; i < take; ++i)
      errors += (decoded[i] != payload[i]);
    bits_done += take;
  }

  BerRecord rec;
  rec.snr_db = snr_db;
  rec.modulation = cfg.mcs.modulation;
  rec.code_rate = cfg.mcs.code_rate;
  rec.pilot_scheme = pattern_name(cfg.pilots.name);
  rec.estimator = cfg.estimator;
  rec.channel = cfg.channel.kind;
  rec.bits = bits_done;
  rec.bit_errors = errors;
  rec.seed = cfg.rng_seed;
  rec.max_unestimated_run = max_unestimated_run(cfg.geometry, cfg.pilots);
  rec.sef = spectral_efficiency_pilots(cfg.pilots, cfg.geometry).ratio();
  const double rate = cfg.uncoded ? 1.0 : code_rate_value(cfg.mcs.code_rate);
  rec.ebn0_db = snr_db - 10.0 * std::log10(bps * rate);
  return rec;
}

void SweepPlan::validate() const {
  if (bits_per_point == 0) throw std::invalid_argument("bits_per_point must be > 0");
  if (snr_points_db.empty()) throw std::invalid_argument("no SNR points");
  for (size_t i = 1; i < snr_points_db.size(); ++i)
    if (snr_points_db[i] <= snr_points_db[i - 1])
      throw std::invalid_argument("snr_points_db must be strictly increasing");
  if (schemes.empty()) throw std::invalid_argument("no pilot/estimator schemes");
  if (mcs_list.empty()) throw std::invalid_argument("no MCS entries");
}

size_t SweepPlan::n_points() const {
  return snr_points_db.size() * schemes.size() * mcs_list.size();
}

std::vector<BerRecord> run_sweep(const SweepPlan& plan, unsigned threads) {
  plan.validate();
  struct Point {
    PhyConfig cfg;
    double snr;
  };
  std::vector<Point> points;
  points.reserve(plan.n_points());
  for (const auto& mcs : plan.mcs_list) {
    for (const auto& [pilots, est] : plan.schemes) {
      for (double snr : plan.snr_points_db) {
        PhyConfig cfg = plan.base;
        cfg.mcs = mcs;
        cfg.pilots = pilots;
        cfg.estimator = est;
        cfg.total_bits = plan.bits_per_point;
        cfg.rng_seed = derive_stream_seed(plan.base.rng_seed, points.size());
        points.push_back({std::move(cfg), snr});
      }
    }
  }

  std::vector<BerRecord> records(points.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
      try {
        records[i] = run_point(points[i].cfg, points[i].snr);
      } catch (const std::exception& e) {
        BerRecord& r = records[i];
        r.snr_db = points[i].snr;
        r.modulation = points[i].cfg.mcs.modulation;
        r.code_rate = points[i].cfg.mcs.code_rate;
        r.pilot_scheme = pattern_name(points[i].cfg.pilots.name);
        r.estimator = points[i].cfg.estimator;
        r.channel = points[i].cfg.channel.kind;
        r.seed = points[i].cfg.rng_seed;
        r.error = e.what();
      }
    }
  };

  unsigned n_threads = threads ? threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, points.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

std::string csv_header() {
  return "snr_db,modulation,code_rate,pilot_scheme,estimator,channel,bits,"
         "bit_errors,ber,seed,max_run,sef";
}

std::string to_csv_row(const BerRecord& r) {
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "%g,%s,%s,%s,%s,%s,%llu,%llu,%.17g,%llu,%d,%.4f", r.snr_db,
                modulation_name(r.modulation), code_rate_name(r.code_rate),
                r.pilot_scheme.c_str(), estimator_name(r.estimator),
                channel_name(r.channel),
                static_cast<unsigned long long>(r.bits),
                static_cast<unsigned long long>(r.bit_errors), r.ber(),
                static_cast<unsigned long long>(r.seed),
                r.max_unestimated_run, r.sef);
  return buf;
}

}  // namespace wavephy
