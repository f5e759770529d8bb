#pragma once

// Run configuration for the verification driver. Values come from a flat
// "key = value" file and/or command-line flags (flags win); every key is
// parsed and validated here so errors name the offending key.

#include <map>
#include <string>
#include <vector>

#include "roughcert/circle.hpp"
#include "roughcert/orlicz.hpp"

namespace roughcert {

enum class Mode { schedule, decoupled };

struct EmitSet {
  bool csv = false;
  bool json = true;
  bool svg = false;
};

struct RunConfig {
  std::string phi = "power_log:0.5";
  Mode mode = Mode::decoupled;
  double N = 1099511627776.0;  // 2^40
  int n = 16;                  // derived from N in schedule mode
  std::size_t grid = 8192;
  int oversample = 16;
  double tol = 1e-6;
  std::vector<double> p = {4.0, 8.0};
  std::string out = "out";
  EmitSet emit;
  int jobs = 1;
  circle::GeometrySpec geometry;
  std::vector<double> sweep_N;
  std::vector<int> sweep_n;

  orlicz::YoungFunction young() const { return orlicz::YoungFunction::parse(phi); }
};

using KeyValues = std::map<std::string, std::string>;

/// Keys accepted in files and on the command line.
const std::vector<std::string>& config_keys();

/// Reads "key = value" lines; '#' starts a comment. Throws IoError when the
/// file cannot be read and ConfigError on malformed lines.
KeyValues read_config_file(const std::string& path);

/// Starts from the defaults, applies `kv`, then validates. In schedule mode n
/// is computed from N. Throws ConfigError naming the key.
RunConfig parse_config(const KeyValues& kv);

/// Numbers like "1e6", "2^40", "1048576".
double parse_real(const std::string& key, const std::string& text);
std::vector<double> parse_real_list(const std::string& key, const std::string& text);

/// Re-validates a config assembled in code (e.g. one sweep point).
void validate_config(RunConfig& cfg);

std::string to_string(Mode m);

}  // namespace roughcert
