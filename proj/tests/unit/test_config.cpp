#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "roughcert/config.hpp"
#include "roughcert/error.hpp"

using namespace roughcert;

namespace {

const std::string kData = ROUGHCERT_TEST_DATA_DIR;

std::string config_key_of(const KeyValues& kv) {
  try {
    parse_config(kv);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return {};
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig cfg = parse_config({});
  CHECK(cfg.phi == "power_log:0.5");
  CHECK(cfg.mode == Mode::decoupled);
  CHECK(cfg.N == std::ldexp(1.0, 40));
  CHECK(cfg.n == 16);
  CHECK(cfg.grid == 8192);
  CHECK(cfg.oversample == 16);
  CHECK(cfg.tol == 1e-6);
  CHECK(cfg.p == std::vector<double>{4.0, 8.0});
  CHECK(cfg.emit.json);
  CHECK_FALSE(cfg.emit.csv);
  CHECK_FALSE(cfg.emit.svg);
  CHECK(cfg.jobs == 1);
  CHECK(cfg.geometry.s == 0);
}

TEST_CASE("numbers") {
  CHECK(parse_real("N", "2^40") == std::ldexp(1.0, 40));
  CHECK(parse_real("N", "1e6") == 1e6);
  CHECK(parse_real("N", " 1048576 ") == 1048576.0);
  CHECK_THROWS_AS(parse_real("N", "abc"), ConfigError);
  CHECK_THROWS_AS(parse_real("N", "2^5000"), ConfigError);
  CHECK(parse_real_list("p", "4, 1.5,8") == std::vector<double>{4.0, 1.5, 8.0});
  CHECK_THROWS_AS(parse_real_list("p", ""), ConfigError);
}

TEST_CASE("schedule mode derives n from N") {
  const RunConfig cfg = parse_config({{"mode", "schedule"}, {"N", "1e6"}});
  CHECK(cfg.mode == Mode::schedule);
  CHECK(cfg.n == 3);
  CHECK(config_key_of({{"mode", "schedule"}, {"N", "1e6"}, {"n", "4"}}) == "n");
  CHECK(config_key_of({{"mode", "schedule"}, {"N", "50"}}) == "N");
}

TEST_CASE("errors name the offending key") {
  CHECK(config_key_of({{"phi", "power_log:-1"}}) == "phi");
  CHECK(config_key_of({{"phi", "nonsense"}}) == "phi");
  CHECK(config_key_of({{"mode", "fast"}}) == "mode");
  CHECK(config_key_of({{"N", "1000"}, {"n", "16"}}) == "N");
  CHECK(config_key_of({{"grid", "32"}}) == "grid");
  CHECK(config_key_of({{"oversample", "8"}}) == "oversample");
  CHECK(config_key_of({{"tol", "0.1"}}) == "tol");
  CHECK(config_key_of({{"tol", "0"}}) == "tol");
  CHECK(config_key_of({{"p", "4,1"}}) == "p");
  CHECK(config_key_of({{"emit", "json,pdf"}}) == "emit");
  CHECK(config_key_of({{"jobs", "0"}}) == "jobs");
  CHECK(config_key_of({{"colour", "red"}}) == "colour");
  CHECK(config_key_of({{"n", "1.5"}}) == "n");
  try {
    parse_config({{"phi", "power_log:-1"}});
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("config key 'phi'") == 0);
  }
}

TEST_CASE("every documented key is accepted") {
  for (const auto& k : {"phi", "mode", "N", "n", "grid", "oversample", "tol", "p", "out", "emit", "jobs", "s",
                        "t_start", "t_step", "sweep_N", "sweep_n"}) {
    CHECK(std::find(config_keys().begin(), config_keys().end(), k) != config_keys().end());
  }
}

TEST_CASE("config files") {
  const KeyValues kv = read_config_file(kData + "/run.cfg");
  CHECK(kv.at("N") == "2^32");
  CHECK(kv.at("n") == "8");
  CHECK(kv.at("grid") == "1024");
  const RunConfig cfg = parse_config(kv);
  CHECK(cfg.phi == "log_quotient");
  CHECK(cfg.N == std::ldexp(1.0, 32));
  CHECK(cfg.n == 8);
  CHECK(cfg.p == std::vector<double>{4.0, 1.5});
  CHECK(cfg.emit.csv);
  CHECK(cfg.emit.json);
  CHECK_FALSE(cfg.emit.svg);
  CHECK_THROWS_AS(read_config_file(kData + "/bad.cfg"), ConfigError);
  CHECK_THROWS_AS(read_config_file(kData + "/missing.cfg"), IoError);
}

TEST_CASE("later values override earlier ones") {
  KeyValues kv = read_config_file(kData + "/run.cfg");
  kv["n"] = "4";
  kv["emit"] = "svg";
  const RunConfig cfg = parse_config(kv);
  CHECK(cfg.n == 4);
  CHECK(cfg.N == std::ldexp(1.0, 32));
  CHECK(cfg.emit.svg);
  CHECK_FALSE(cfg.emit.json);
}

TEST_CASE("validate_config re-checks a modified config") {
  RunConfig cfg = parse_config({});
  cfg.n = 1 << 20;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = parse_config({{"mode", "schedule"}, {"N", "1e9"}});
  const int n9 = cfg.n;
  cfg.N = 1e3;
  validate_config(cfg);
  CHECK(cfg.n <= n9);
  CHECK(to_string(Mode::schedule) == "schedule");
  CHECK(to_string(Mode::decoupled) == "decoupled");
}
