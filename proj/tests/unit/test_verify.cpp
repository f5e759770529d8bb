#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "roughcert/config.hpp"
#include "roughcert/emit.hpp"
#include "roughcert/error.hpp"
#include "roughcert/verify.hpp"

using namespace roughcert;
namespace fs = std::filesystem;

namespace {

RunConfig small_config(const std::string& n = "4") {
  return parse_config({{"N", "2^32"}, {"n", n}, {"grid", "1024"}});
}

const VerificationReport& small_report() {
  static const VerificationReport r = run_verify(small_config());
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("roughcert_test_verify_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("a small run passes every check") {
  const auto& r = small_report();
  CHECK_FALSE(r.aborted);
  CHECK(r.all_passed());
  CHECK(r.exit_code() == 0);
  for (const char* name : {"normalization", "atom_congruence", "abs_D", "oracle_quadrature", "oracle_series",
                           "lemma_orlicz", "sup_bound", "khat_le_m", "evenness", "mean_zero", "disjoint_support",
                           "khat_continuity", "atom_decay", "pair_cancellation", "pair_grid_stability", "separation",
                           "rudin_bound", "dirichlet_l4", "dirichlet_band", "determinism"}) {
    CAPTURE(name);
    const CheckRecord* c = r.find(name);
    REQUIRE(c != nullptr);
    CHECK(c->passed);
    CHECK_FALSE(c->skipped);
  }
  CHECK(r.find("no_such_check") == nullptr);
  // Decoupled mode skips the Luxemburg range; n < 8 skips the exponent fits.
  CHECK(r.find("luxemburg_range")->skipped);
  CHECK(r.find("exponent_p4")->skipped);
  CHECK(r.summary.n == 4);
  CHECK(r.summary.N == std::ldexp(1.0, 32));
  CHECK(r.summary.c > 0.0);
  CHECK(r.summary.absD >= 0.9);
  CHECK(r.summary.margin <= 0.25);
  CHECK(std::isfinite(r.summary.luxemburg));
  CHECK(r.window_profile.has_value());
}

TEST_CASE("n = 1 skips the checks that need log n > 0") {
  const auto r = run_verify(small_config("1"));
  CHECK_FALSE(r.aborted);
  CHECK(r.find("atom_decay")->skipped);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("infeasible geometry aborts with a report") {
  auto cfg = parse_config({{"N", "2^32"}, {"n", "4"}, {"s", "10"}, {"t_start", "1"}, {"t_step", "2"}});
  const auto r = run_verify(cfg);
  CHECK(r.aborted);
  CHECK(r.abort_stage == "construction");
  CHECK(r.abort_message.find("window") != std::string::npos);
  CHECK(r.exit_code() == 3);
  CHECK_FALSE(r.all_passed());
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["aborted"] == true);
  CHECK(j["abort"]["stage"] == "construction");
}

TEST_CASE("report.json shape") {
  const auto j = nlohmann::ordered_json::parse(report_json(small_report()));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  REQUIRE(keys.size() >= 4);
  CHECK(keys[0] == "config");
  CHECK(keys[1] == "construction");
  CHECK(keys[2] == "checks");
  CHECK(keys[3] == "aborted");
  CHECK(j["aborted"] == false);
  CHECK_FALSE(j["config"].contains("out"));
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c["passed"].is_boolean());
    CHECK(c.contains("measured"));
    CHECK(c.contains("threshold"));
  }
  // NaN is written as null.
  bool saw_null = false;
  for (const auto& c : j["checks"]) saw_null = saw_null || (c["status"] == "skipped" && c["measured"].is_null());
  CHECK(saw_null);
  // Byte-identical on a second serialization.
  CHECK(report_json(small_report()) == report_json(small_report()));
}

TEST_CASE("csv") {
  const std::string table = csv_table({small_report()});
  CHECK(table.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(std::string(kCsvHeader) == "N,n,c,absD,margin,modular,luxemburg,sup_m,c7,c8,ratio_p4,slope_p4");
  const std::string row = csv_row(small_report());
  CHECK(std::count(row.begin(), row.end(), ',') == 11);
  CHECK(row.find(",,") == std::string::npos);
  // Values that were never computed leave their cells empty.
  const auto aborted =
      run_verify(parse_config({{"N", "2^32"}, {"n", "4"}, {"s", "10"}, {"t_start", "1"}, {"t_step", "2"}}));
  const std::string partial = csv_row(aborted);
  CHECK(std::count(partial.begin(), partial.end(), ',') == 11);
  CHECK(partial.back() == ',');
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("emit_report writes the requested files") {
  const fs::path dir = scratch("emit");
  const auto paths = emit_report(small_report(), EmitSet{true, true, true}, dir.string());
  for (const char* name : {"report.json", "results.csv", "khat_profile.svg", "m_profile.svg", "ratio_loglog.svg"}) {
    CAPTURE(name);
    CHECK(fs::exists(dir / name));
  }
  CHECK(paths.size() == 5);
  CHECK(slurp(dir / "report.json") == report_json(small_report()));
  CHECK(slurp(dir / "m_profile.svg").find("<svg") != std::string::npos);
  CHECK_THROWS_AS(write_output("/proc/roughcert/none", "x.txt", "x"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("sweeps") {
  RunConfig cfg = small_config();
  CHECK_THROWS_AS(run_sweep(cfg, Axis::N, {std::ldexp(1.0, 32)}), ParameterError);
  const auto rs = run_sweep(cfg, Axis::N, {std::ldexp(1.0, 40), std::ldexp(1.0, 32)});
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].config.N == std::ldexp(1.0, 40));
  CHECK(rs[1].config.N == std::ldexp(1.0, 32));
  CHECK(csv_row(rs[1]) == csv_row(small_report()));
  const auto j = nlohmann::json::parse(sweep_json(rs));
  CHECK(j["points"].size() == 2);

  RunConfig sched = parse_config({{"mode", "schedule"}, {"N", "1e6"}, {"grid", "1024"}});
  CHECK_THROWS_AS(run_sweep(sched, Axis::n, {2, 3}), ParameterError);
}

TEST_CASE("oracle helpers") {
  CHECK(quadrature_agreement(50, 1).cases == 50);
  CHECK(quadrature_agreement(50, 1).max_rel_error <= 1e-9);
  CHECK(series_agreement(50, 2).max_rel_error <= 1e-8);
  // Same seed, same numbers.
  CHECK(quadrature_agreement(20, 3).max_rel_error == quadrature_agreement(20, 3).max_rel_error);
  CHECK(lemma_failures(orlicz::YoungFunction::parse("power_log:0.5"), 50, 4) == 0);
}
