#include "roughcert/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "roughcert/error.hpp"

namespace roughcert {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double plain_real(const std::string& key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const double v = parse_real(key, text);
  if (v != std::floor(v) || std::fabs(v) > 9.0e15) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return static_cast<long long>(v);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "phi",  "mode", "N",   "n",    "grid", "oversample", "tol",     "p",      "out",
      "emit", "jobs", "s",   "t_start", "t_step", "sweep_N", "sweep_n"};
  return keys;
}

std::string to_string(Mode m) { return m == Mode::schedule ? "schedule" : "decoupled"; }

double parse_real(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    const double base = plain_real(key, trim(std::string_view(text).substr(0, caret)));
    const double exponent = plain_real(key, trim(std::string_view(text).substr(caret + 1)));
    const double v = std::pow(base, exponent);
    if (!std::isfinite(v)) throw ConfigError(key, "value '" + text + "' overflows");
    return v;
  }
  return plain_real(key, text);
}

std::vector<double> parse_real_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_real(key, item));
  if (out.empty()) throw ConfigError(key, "empty list");
  return out;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(trim(body), "line " + std::to_string(lineno) + " is not 'key = value'");
    }
    std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(lineno) + " has an empty key");
    kv[std::move(key)] = trim(std::string_view(body).substr(eq + 1));
  }
  return kv;
}

void validate_config(RunConfig& cfg) {
  orlicz::YoungFunction yf = [&] {
    try {
      return cfg.young();
    } catch (const Error& e) {
      throw ConfigError("phi", e.what());
    }
  }();
  if (cfg.mode == Mode::schedule) {
    if (!(cfg.N >= 100.0)) throw ConfigError("N", "schedule mode requires N >= 100");
    try {
      cfg.n = orlicz::schedule_n(yf, cfg.N).n;
    } catch (const Error& e) {
      throw ConfigError("N", e.what());
    }
  } else {
    if (cfg.n < 1) throw ConfigError("n", "must be >= 1");
    const double nn = static_cast<double>(cfg.n);
    if (!(cfg.N >= 64.0 * nn * nn)) throw ConfigError("N", "decoupled mode requires N >= 64 n^2");
  }
  if (cfg.grid < 64) throw ConfigError("grid", "must be >= 64");
  if (cfg.oversample < 16) throw ConfigError("oversample", "must be >= 16");
  if (!(cfg.tol > 0.0 && cfg.tol <= 1e-3)) throw ConfigError("tol", "must lie in (0, 1e-3]");
  if (cfg.p.empty()) throw ConfigError("p", "empty list");
  for (double p : cfg.p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("p", "every exponent must be finite and > 1");
  }
  if (cfg.jobs < 1) throw ConfigError("jobs", "must be >= 1");
  if (cfg.out.empty()) throw ConfigError("out", "empty path");
}

RunConfig parse_config(const KeyValues& kv) {
  RunConfig cfg;
  const auto& keys = config_keys();
  bool n_given = false;
  for (const auto& [key, value] : kv) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(key, "unknown key");
    }
    if (key == "phi") {
      cfg.phi = trim(value);
    } else if (key == "mode") {
      const std::string m = trim(value);
      if (m == "schedule") cfg.mode = Mode::schedule;
      else if (m == "decoupled") cfg.mode = Mode::decoupled;
      else throw ConfigError(key, "expected 'schedule' or 'decoupled', got '" + m + "'");
    } else if (key == "N") {
      cfg.N = parse_real(key, value);
    } else if (key == "n") {
      cfg.n = static_cast<int>(std::clamp<long long>(parse_integer(key, value), -1, 1 << 24));
      n_given = true;
    } else if (key == "grid") {
      const long long g = parse_integer(key, value);
      if (g < 0) throw ConfigError(key, "must be >= 64");
      cfg.grid = static_cast<std::size_t>(g);
    } else if (key == "oversample") {
      cfg.oversample = static_cast<int>(std::clamp<long long>(parse_integer(key, value), -1, 1 << 20));
    } else if (key == "tol") {
      cfg.tol = parse_real(key, value);
    } else if (key == "p") {
      cfg.p = parse_real_list(key, value);
    } else if (key == "out") {
      cfg.out = trim(value);
    } else if (key == "emit") {
      cfg.emit = {false, false, false};
      for (const auto& f : split_list(value)) {
        if (f == "csv") cfg.emit.csv = true;
        else if (f == "json") cfg.emit.json = true;
        else if (f == "svg") cfg.emit.svg = true;
        else throw ConfigError(key, "unknown format '" + f + "' (csv, json, svg)");
      }
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(std::clamp<long long>(parse_integer(key, value), -1, 1024));
    } else if (key == "s" || key == "t_start" || key == "t_step") {
      const long long v = parse_integer(key, value);
      if (v < 1) throw ConfigError(key, "must be a positive integer");
      (key == "s" ? cfg.geometry.s : key == "t_start" ? cfg.geometry.t_start : cfg.geometry.t_step) = v;
    } else if (key == "sweep_N") {
      cfg.sweep_N = parse_real_list(key, value);
    } else if (key == "sweep_n") {
      for (double v : parse_real_list(key, value)) {
        if (v != std::floor(v) || v < 1 || v > (1 << 24)) throw ConfigError(key, "entries must be positive integers");
        cfg.sweep_n.push_back(static_cast<int>(v));
      }
    }
  }
  if (n_given && cfg.mode == Mode::schedule) {
    throw ConfigError("n", "n is derived from N in schedule mode; use --mode decoupled to set it");
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace roughcert
