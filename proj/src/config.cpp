#include "wavephy/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace wavephy {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    throw ConfigError("invalid number for '" + key + "': " + v);
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    throw ConfigError("invalid integer for '" + key + "': " + v);
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  std::string l = lower(v);
  if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
  if (l == "false" || l == "0" || l == "no" || l == "off") return false;
  throw ConfigError("invalid boolean for '" + key + "': " + v);
}

EstMethod parse_estimator(const std::string& s) {
  std::string l = lower(s);
  if (l == "ls") return EstMethod::Ls;
  if (l == "mmse") return EstMethod::Mmse;
  if (l == "perfect") return EstMethod::Perfect;
  throw ConfigError("unknown estimator: " + s);
}

PilotScheme parse_scheme(const std::string& s, const FftGeometry& geom,
                         const std::map<std::string, std::string>& keys) {
  std::string l = lower(s);
  if (l == "standard4") return PilotScheme::standard4();
  if (l == "regular4") return derive_regular_pattern(geom, 4);
  if (l == "extended6") return PilotScheme::extended6();
  if (l == "custom") {
    auto it = keys.find("pilot_positions");
    if (it == keys.end())
      throw ConfigError("custom pilot scheme needs pilot_positions");
    PilotScheme scheme;
    scheme.name = PilotPattern::Custom;
    for (const auto& tok : split(it->second, ','))
      scheme.positions.push_back(static_cast<int>(parse_int("pilot_positions", tok)));
    std::sort(scheme.positions.begin(), scheme.positions.end());
    scheme.values.assign(scheme.positions.size(), cplx(1.0, 0.0));
    return scheme;
  }
  throw ConfigError("unknown pilot scheme: " + s);
}

}  // namespace

Modulation parse_modulation(const std::string& s) {
  std::string l = lower(s);
  if (l == "bpsk") return Modulation::Bpsk;
  if (l == "qpsk") return Modulation::Qpsk;
  if (l == "16qam" || l == "qam16") return Modulation::Qam16;
  if (l == "64qam" || l == "qam64") return Modulation::Qam64;
  throw ConfigError("unknown modulation: " + s);
}

CodeRate parse_code_rate(const std::string& s) {
  if (s == "1/2") return CodeRate::R12;
  if (s == "2/3") return CodeRate::R23;
  if (s == "3/4") return CodeRate::R34;
  throw ConfigError("unknown code rate: " + s);
}

McsScheme parse_mcs(const std::string& s) {
  auto dash = s.find('-');
  if (dash == std::string::npos) throw ConfigError("MCS must look like bpsk-1/2");
  McsScheme mcs{parse_modulation(s.substr(0, dash)), parse_code_rate(s.substr(dash + 1))};
  try {
    mcs.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string(e.what()) + ": " + s);
  }
  return mcs;
}

SweepPlan plan_from_keys(const std::map<std::string, std::string>& keys) {
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = keys.find(k);
    return it == keys.end() ? nullptr : &it->second;
  };

  PhyConfig phy;
  if (auto* v = get("fft_size")) phy.geometry.fft_size = static_cast<int>(parse_int("fft_size", *v));
  if (auto* v = get("cp_len")) phy.geometry.cp_len = static_cast<int>(parse_int("cp_len", *v));
  if (auto* v = get("subcarrier_spacing_hz"))
    phy.geometry.subcarrier_spacing_hz = parse_double("subcarrier_spacing_hz", *v);

  if (auto* v = get("modulation")) phy.mcs.modulation = parse_modulation(*v);
  if (auto* v = get("code_rate")) phy.mcs.code_rate = parse_code_rate(*v);

  // channel
  std::string channel_kind = get("channel") ? lower(*get("channel")) : "awgn";
  double snr0 = 10.0;
  if (channel_kind == "awgn") {
    phy.channel = ChannelSpec::awgn(snr0);
  } else if (channel_kind == "rayleigh") {
    phy.channel = ChannelSpec::rayleigh_default(snr0);
  } else {
    throw ConfigError("unknown channel: " + channel_kind);
  }
  if (auto* v = get("speed_kmh")) phy.channel.speed_kmh = parse_double("speed_kmh", *v);
  if (auto* v = get("carrier_hz")) phy.channel.carrier_hz = parse_double("carrier_hz", *v);
  if (auto* v = get("pdp")) {
    phy.channel.pdp.clear();
    double total = 0.0;
    for (const auto& tok : split(*v, ',')) {
      auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ConfigError("pdp taps must look like delay:power");
      PdpTap tap;
      tap.delay = static_cast<int>(parse_int("pdp", tok.substr(0, colon)));
      tap.power = parse_double("pdp", tok.substr(colon + 1));
      total += tap.power;
      phy.channel.pdp.push_back(tap);
    }
    if (total <= 0) throw ConfigError("pdp powers must be positive");
    for (auto& tap : phy.channel.pdp) tap.power /= total;
  }

  if (auto* v = get("estimator")) phy.estimator = parse_estimator(*v);
  if (auto* v = get("interpolation")) {
    std::string l = lower(*v);
    if (l == "linear") phy.interpolation = Interpolation::Linear;
    else if (l == "dft") phy.interpolation = Interpolation::DftBased;
    else throw ConfigError("unknown interpolation: " + *v);
  }
  if (auto* v = get("source")) {
    std::string l = lower(*v);
    if (l == "comb") phy.source = EstSource::CombPilots;
    else if (l == "lts") phy.source = EstSource::LtsBlock;
    else throw ConfigError("unknown estimator source: " + *v);
  }

  if (auto* v = get("seed")) phy.rng_seed = static_cast<std::uint64_t>(parse_int("seed", *v));
  if (auto* v = get("frame_symbols")) phy.frame_symbols = static_cast<int>(parse_int("frame_symbols", *v));
  if (auto* v = get("uncoded")) phy.uncoded = parse_bool("uncoded", *v);
  if (auto* v = get("pilot_scheme")) phy.pilots = parse_scheme(*v, phy.geometry, keys);

  SweepPlan plan;
  plan.base = phy;
  plan.bits_per_point = 100000;
  if (auto* v = get("bits")) {
    long long b = parse_int("bits", *v);
    if (b <= 0) throw ConfigError("bits must be > 0");
    plan.bits_per_point = static_cast<std::uint64_t>(b);
  }

  if (auto* v = get("snr_list")) {
    for (const auto& tok : split(*v, ','))
      plan.snr_points_db.push_back(parse_double("snr_list", tok));
  } else if (auto* s = get("snr")) {
    plan.snr_points_db.push_back(parse_double("snr", *s));
  } else {
    for (int snr = 0; snr <= 30; snr += 2) plan.snr_points_db.push_back(snr);
  }

  std::vector<PilotScheme> schemes;
  if (auto* v = get("schemes")) {
    for (const auto& tok : split(*v, ','))
      schemes.push_back(parse_scheme(tok, phy.geometry, keys));
  } else {
    schemes.push_back(phy.pilots);
  }
  std::vector<EstMethod> estimators;
  if (auto* v = get("estimators")) {
    for (const auto& tok : split(*v, ',')) estimators.push_back(parse_estimator(tok));
  } else {
    estimators.push_back(phy.estimator);
  }
  for (const auto& scheme : schemes)
    for (EstMethod est : estimators) plan.schemes.emplace_back(scheme, est);

  if (auto* v = get("mcs")) {
    for (const auto& tok : split(*v, ',')) plan.mcs_list.push_back(parse_mcs(tok));
  } else {
    plan.mcs_list.push_back(phy.mcs);
  }

  try {
    plan.base.validate();
    plan.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return plan;
}

SweepPlan load_config(const std::string& path,
                      const std::map<std::string, std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  std::map<std::string, std::string> keys;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("bad section header at line " + std::to_string(lineno));
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    std::string key = lower(trim(line.substr(0, eq)));
    // allow dotted section prefixes on keys
    auto dot = key.rfind('.');
    if (dot != std::string::npos) key = key.substr(dot + 1);
    // section-scoped shorthands
    if (section == "channel" && key == "kind") key = "channel";
    if (section == "estimator" && key == "method") key = "estimator";
    keys[key] = trim(line.substr(eq + 1));
  }
  for (const auto& [k, v] : overrides) keys[lower(k)] = v;
  return plan_from_keys(keys);
}

}  // namespace wavephy
