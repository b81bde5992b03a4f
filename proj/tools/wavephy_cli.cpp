#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "wavephy/config.hpp"
#include "wavephy/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string file_tag(const wavephy::BerRecord& r) {
  std::string mcs = std::string(wavephy::modulation_name(r.modulation)) + "_r" +
                    wavephy::code_rate_name(r.code_rate);
  mcs.erase(std::remove(mcs.begin(), mcs.end(), '/'), mcs.end());
  return r.pilot_scheme + "_" + wavephy::estimator_name(r.estimator) + "_" + mcs;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const std::map<std::string, std::string>& overrides,
              unsigned threads) {
  wavephy::SweepPlan plan;
  try {
    plan = wavephy::load_config(config_path, overrides);
  } catch (const wavephy::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  std::vector<wavephy::BerRecord> records;
  try {
    fs::create_directories(out_dir);
    records = wavephy::run_sweep(plan, threads);
  } catch (const std::exception& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return 2;
  }

  bool failed_points = false;
  for (const auto& r : records) {
    if (!r.error.empty()) {
      failed_points = true;
      std::cerr << "point failed (" << wavephy::to_csv_row(r) << "): " << r.error
                << "\n";
    }
  }

  std::map<std::string, std::string> contents;

  // ber.csv
  {
    std::ostringstream csv;
    csv << wavephy::csv_header() << "\n";
    for (const auto& r : records) csv << wavephy::to_csv_row(r) << "\n";
    contents["ber.csv"] = csv.str();
  }

  // one gnuplot data file per (scheme, estimator, mcs)
  std::vector<std::string> curve_order;
  std::map<std::string, std::ostringstream> curves;
  for (const auto& r : records) {
    if (!r.error.empty()) continue;
    std::string tag = file_tag(r);
    if (!curves.count(tag)) {
      curves[tag] << "# snr_db  ber  bits  bit_errors\n";
      curve_order.push_back(tag);
    }
    char line[128];
    std::snprintf(line, sizeof(line), "%g %.17g %llu %llu\n", r.snr_db, r.ber(),
                  static_cast<unsigned long long>(r.bits),
                  static_cast<unsigned long long>(r.bit_errors));
    curves[tag] << line;
  }
  for (const auto& tag : curve_order)
    contents["ber_" + tag + ".dat"] = curves[tag].str();

  // gnuplot script: log-scale BER vs SNR, one curve per data file
  {
    std::ostringstream gp;
    gp << "set logscale y\nset xlabel 'SNR [dB]'\nset ylabel 'BER'\n"
       << "set grid\nset key outside\nset terminal pngcairo size 900,600\n"
       << "set output 'ber.png'\nplot";
    bool first = true;
    for (const auto& tag : curve_order) {
      gp << (first ? " " : ", \\\n     ") << "'ber_" << tag
         << ".dat' using 1:2 with linespoints title '" << tag << "'";
      first = false;
    }
    gp << "\n";
    contents["plot.gp"] = gp.str();
  }

  try {
    json manifest;
    manifest["tool"] = "wavephy";
    manifest["version"] = kVersion;
    manifest["config"] = config_path;
    manifest["output_dir"] = out_dir;
    manifest["overrides"] = overrides;
    auto now = std::chrono::system_clock::now();
    manifest["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
            .count();
    json files = json::object();
    for (const auto& [name, data] : contents) {
      std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
      out << data;
      if (!out) throw std::runtime_error("failed writing " + name);
      char hash[32];
      std::snprintf(hash, sizeof(hash), "fnv1a64:%016llx",
                    static_cast<unsigned long long>(fnv1a64(data)));
      files[name] = hash;
    }
    manifest["files"] = files;
    std::ofstream mf(fs::path(out_dir) / "manifest.json");
    mf << manifest.dump(2) << "\n";
    if (!mf) throw std::runtime_error("failed writing manifest.json");
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 2;
  }

  std::cout << records.size() << " points -> " << out_dir << "/ber.csv\n";
  return failed_points ? 2 : 0;
}

int cmd_patterns(const std::string& config_path) {
  using namespace wavephy;
  FftGeometry geom = FftGeometry::ieee80211p();
  std::vector<PilotScheme> schemes = {PilotScheme::standard4(),
                                      derive_regular_pattern(geom, 4),
                                      PilotScheme::extended6()};
  if (!config_path.empty()) {
    try {
      SweepPlan plan = load_config(config_path);
      geom = plan.base.geometry;
      schemes.push_back(plan.base.pilots);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 1;
    }
  }

  std::printf("%-10s  %-28s  %7s  %6s  %9s\n", "scheme", "positions", "max_run",
              "sef", "sef_alt");
  for (const auto& s : schemes) {
    std::ostringstream pos;
    for (size_t i = 0; i < s.positions.size(); ++i)
      pos << (i ? "," : "") << s.positions[i];
    auto sef = spectral_efficiency_pilots(s, geom);
    std::printf("%-10s  %-28s  %7d  %.4f  %.4f\n", pattern_name(s.name),
                pos.str().c_str(), max_unestimated_run(geom, s), sef.ratio(),
                sef.ratio_incl_pilots());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"802.11p OFDM baseband simulator: pilot-aided LS/MMSE channel "
               "estimation and Monte Carlo BER sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path, out_dir;
  if (const char* env = std::getenv("WAVEPHY_OUT")) out_dir = env;
  if (out_dir.empty()) out_dir = "out";

  auto* sweep = app.add_subcommand("sweep", "run a BER-vs-SNR sweep");
  std::string bits, snr_list, scheme, estimator, seed, channel;
  unsigned threads = 0;
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--bits", bits, "bits per sweep point");
  sweep->add_option("--snr-list", snr_list, "comma-separated SNR points [dB]");
  sweep->add_option("--snr", snr_list, "single SNR point [dB]");
  sweep->add_option("--scheme", scheme, "pilot scheme(s)");
  sweep->add_option("--estimator", estimator, "estimator(s): ls|mmse|perfect");
  sweep->add_option("--seed", seed, "master RNG seed");
  sweep->add_option("--channel", channel, "awgn|rayleigh");
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* patterns = app.add_subcommand(
      "patterns", "print pilot pattern metrics (runs, spectral efficiency)");
  std::string patterns_config;
  patterns->add_option("--config", patterns_config, "config with a custom scheme");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(sweep)) {
    std::map<std::string, std::string> overrides;
    if (!bits.empty()) overrides["bits"] = bits;
    if (!snr_list.empty()) overrides["snr_list"] = snr_list;
    if (!scheme.empty()) overrides["schemes"] = scheme;
    if (!estimator.empty()) overrides["estimators"] = estimator;
    if (!seed.empty()) overrides["seed"] = seed;
    if (!channel.empty()) overrides["channel"] = channel;
    return cmd_sweep(config_path, out_dir, overrides, threads);
  }
  return cmd_patterns(patterns_config);
}
