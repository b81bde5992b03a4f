#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "wavephy/sim.hpp"

namespace wavephy {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Load a sweep plan from an INI-style config file (sections group keys by
/// module; key names are globally unique so overrides may use bare keys).
/// `overrides` entries replace file values.
SweepPlan load_config(const std::string& path,
                      const std::map<std::string, std::string>& overrides = {});

/// Build a plan from key/value pairs only (no file).
SweepPlan plan_from_keys(const std::map<std::string, std::string>& keys);

Modulation parse_modulation(const std::string& s);
CodeRate parse_code_rate(const std::string& s);
McsScheme parse_mcs(const std::string& s);

}  // namespace wavephy
