// Acceptance suite: one PASS/FAIL line per criterion. Every tolerance the
// criteria state is pinned below; none is read from the environment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "roughcert/config.hpp"
#include "roughcert/construction.hpp"
#include "roughcert/estimates.hpp"
#include "roughcert/logkernel.hpp"
#include "roughcert/orlicz.hpp"
#include "roughcert/trignorms.hpp"
#include "roughcert/verify.hpp"

namespace {

using namespace roughcert;
using circle::Construction;

// Criterion 1
constexpr double kNormTol = 1e-8;
constexpr double kNormSeconds = 5.0;
// Height at N = 2^64 from tests/oracles/oracles.py (mpmath).
constexpr double kHeight64 = 200270520177657882.79;
// Criterion 2
constexpr double kCongruenceTol = 1e-10;
constexpr double kAbsDLow = 0.9, kAbsDHigh = 1.0;
// Criterion 3
constexpr std::size_t kOracleCases = 1000;
constexpr double kQuadratureTol = 1e-9;
constexpr double kSeriesTol = 1e-8;
// Criterion 4
constexpr double kLuxLow = 0.05, kLuxHigh = 20.0;
constexpr double kLuxTol = 1e-6;
constexpr std::size_t kLemmaRandom = 200;
// Criterion 5
constexpr double kSupConstant = 10.0;
constexpr std::size_t kSupGrid = 8192;
constexpr double kSupSeconds = 60.0;
// Criterion 6
constexpr double kPairMax = 100.0;
constexpr double kPairStability = 2.0;
constexpr std::size_t kPairGrid = 8192;
// Criterion 7
constexpr double kMarginMax = 0.25;
// Criterion 8
constexpr int kRudinMaxN = 1 << 14;
constexpr double kRudinConstant = 5.0;
constexpr double kRudinSeconds = 10.0;
// Criterion 9
constexpr double kDirichletTol = 1e-6;
constexpr double kDirichletBand = 2.0;
// Criterion 10
constexpr double kSlopeTol = 0.10;
constexpr double kResidualMax = 0.15;
constexpr double kExponentSeconds = 30.0;
// Criterion 11
constexpr double kMeanZeroTol = 1e-12;
constexpr std::size_t kStructGrid = 8192;
constexpr std::size_t kEvenSamples = 100000;

constexpr int kOversample = 16;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Construction make(double N, int n) { return circle::build_construction({N, n}); }

Outcome normalization() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cons = make(std::ldexp(1.0, 64), 32);
  double worst = 0.0;
  for (std::size_t k = 1; k <= cons.atoms.size(); ++k) {
    worst = std::max(worst, std::fabs(logkernel::m_eval(cons.atom(k), cons.direction(k)) - 1.0));
  }
  const double c_err = std::fabs(cons.c - kHeight64) / kHeight64;
  const double secs = seconds_since(t0);
  return {worst <= kNormTol && c_err <= kNormTol && secs < kNormSeconds,
          "max |m(w_k)(e_k) - 1| = " + num(worst) + " over 64 atoms, height vs independent oracle " + num(c_err) +
              ", " + num(secs) + " s"};
}

Outcome congruence() {
  double c_spread = 0.0, d_spread = 0.0, d_lo = 1e300, d_hi = 0.0;
  const std::pair<double, int> cases[] = {{100.0, 1}, {1e4, 2}, {1e6, 8}, {std::ldexp(1.0, 32), 16},
                                          {std::ldexp(1.0, 64), 32}};
  for (auto [N, n] : cases) {
    const auto cons = make(N, n);
    std::vector<double> D;
    for (std::size_t k = 1; k <= cons.atoms.size(); ++k) {
      const double ck = logkernel::solve_c(cons.I[k - 1], cons.direction(k));
      c_spread = std::max(c_spread, std::fabs(ck - cons.c) / cons.c);
      D.push_back(logkernel::khat(cons.atom(k), cons.direction(k)));
    }
    for (double d : D) {
      d_spread = std::max(d_spread, std::fabs(d - D.front()));
      d_lo = std::min(d_lo, std::fabs(d));
      d_hi = std::max(d_hi, std::fabs(d));
    }
  }
  const bool ok = c_spread <= kCongruenceTol && d_spread <= kCongruenceTol && d_lo >= kAbsDLow && d_hi <= kAbsDHigh;
  return {ok, "c spread " + num(c_spread) + ", D spread " + num(d_spread) + ", |D| in [" + num(d_lo) + ", " +
                  num(d_hi) + "] for N from 100 to 2^64"};
}

Outcome oracles() {
  const auto q = quadrature_agreement(kOracleCases, 20240601);
  const auto s = series_agreement(kOracleCases, 20240602);
  return {q.cases == kOracleCases && s.cases == kOracleCases && q.max_rel_error <= kQuadratureTol &&
              s.max_rel_error <= kSeriesTol,
          "closed form vs quadrature " + num(q.max_rel_error) + ", series vs closed form " +
              num(s.max_rel_error) + " (" + std::to_string(kOracleCases) + " cases each)"};
}

Outcome orlicz_modular() {
  bool ok = true;
  double lo = 1e300, hi = 0.0;
  std::size_t lemma_bad = 0;
  for (const char* phi : {"power_log:0.5", "log_quotient"}) {
    const auto yf = orlicz::YoungFunction::parse(phi);
    for (double N : {1e3, 1e6, 1e9}) {
      const RunConfig cfg = parse_config({{"phi", phi}, {"mode", "schedule"}, {"N", num(N)}});
      const auto cons = make(cfg.N, cfg.n);
      const double lux = orlicz::luxemburg_norm(yf, cons.omega, kLuxTol);
      lo = std::min(lo, lux);
      hi = std::max(hi, lux);
      ok = ok && lux >= kLuxLow && lux <= kLuxHigh;
      if (!orlicz::lemma_orlicz_check(yf, cons.omega, kLuxTol)) ++lemma_bad;
    }
    lemma_bad += lemma_failures(yf, kLemmaRandom, 77);
  }
  ok = ok && lemma_bad == 0;
  return {ok, "Luxemburg norm in [" + num(lo) + ", " + num(hi) + "] over 6 schedule points, lemma failures " +
                  std::to_string(lemma_bad) + " (Omega_n plus 2 x 200 random)"};
}

Outcome sup_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (int n : {8, 16, 32}) {
    const double N = std::ldexp(1.0, 2 * n);
    const auto p = logkernel::profile(make(N, n), kSupGrid);
    const double bound = kSupConstant * (1.0 + n * std::log(n) / std::log(N));
    ok = ok && p.sup_m <= bound;
    detail += "n=" + std::to_string(n) + ": " + num(p.sup_m) + " <= " + num(bound) + "; ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < kSupSeconds, detail + num(secs) + " s"};
}

Outcome pair_cancellation() {
  const auto cons = make(std::ldexp(1.0, 48), 16);
  double worst = 0.0, drift = 1.0;
  for (std::size_t k = 1; k <= 16; ++k) {
    const double a = logkernel::pair_difference_constant(cons, k, kPairGrid);
    const double b = logkernel::pair_difference_constant(cons, k, 2 * kPairGrid);
    worst = std::max({worst, a, b});
    drift = std::max(drift, std::max(a, b) / std::min(a, b));
  }
  return {worst <= kPairMax && drift <= kPairStability,
          "max constant " + num(worst) + ", max ratio under grid doubling " + num(drift)};
}

Outcome separation() {
  std::vector<double> margins;
  for (int b : {32, 48, 64}) margins.push_back(logkernel::d_delta(make(std::ldexp(1.0, b), 32)).margin);
  const bool monotone = margins[1] <= margins[0] && margins[2] <= margins[1];
  return {margins[2] <= kMarginMax && monotone, "margins at N = 2^32, 2^48, 2^64 (n = 32): " + num(margins[0]) +
                                                    ", " + num(margins[1]) + ", " + num(margins[2])};
}

Outcome rudin_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sweep = trignorms::rudin_shapiro_sup_sweep(kRudinMaxN, kOversample);
  double worst = 0.0;
  int at = 0;
  for (int n = 1; n <= kRudinMaxN; ++n) {
    const double r = sweep[static_cast<std::size_t>(n - 1)].upper_bound / std::sqrt(n);
    if (r > worst) worst = r, at = n;
  }
  const double secs = seconds_since(t0);
  return {sweep.size() == static_cast<std::size_t>(kRudinMaxN) && worst <= kRudinConstant && secs < kRudinSeconds,
          "max sup bound / sqrt(n) = " + num(worst) + " at n = " + std::to_string(at) + ", " + num(secs) + " s"};
}

Outcome dirichlet() {
  double err = 0.0;
  for (int n : {2, 8, 64, 1024}) {
    const double exact = std::pow((2.0 * n * n * n + n) / 3.0, 0.25);
    err = std::max(err, std::fabs(trignorms::dirichlet_norm(n, 4.0, kOversample) - exact) / exact);
  }
  double band = 1.0;
  for (double p : {4.0, 8.0}) {
    double lo = 1e300, hi = 0.0;
    for (int e = 6; e <= 14; ++e) {
      const double v = trignorms::dirichlet_norm(1 << e, p, kOversample) / std::pow(std::ldexp(1.0, e), 1.0 - 1.0 / p);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    band = std::max(band, hi / lo);
  }
  return {err <= kDirichletTol && band <= kDirichletBand,
          "L4 relative error " + num(err) + ", band max/min " + num(band)};
}

Outcome exponent_growth() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (double p : {4.0, 8.0}) {
    std::vector<std::pair<double, double>> samples;
    for (int e = 4; e <= 12; ++e) {
      samples.emplace_back(std::ldexp(1.0, e), trignorms::unconditionality_ratio(1 << e, p, kOversample));
    }
    const auto fit = trignorms::fit_exponent(samples);
    const double target = 0.5 - 1.0 / p;
    ok = ok && std::fabs(fit.slope - target) <= kSlopeTol && fit.residual <= kResidualMax;
    detail += "p=" + num(p) + ": slope " + num(fit.slope) + " (target " + num(target) + "), residual " +
              num(fit.residual) + "; ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < kExponentSeconds, detail + num(secs) + " s"};
}

Outcome structure() {
  const int n = 16;
  const auto cons = make(std::ldexp(1.0, 40), n);
  const bool even = circle::is_even(cons.omega, kEvenSamples);
  const double mean = std::fabs(circle::integral(cons.omega));
  const auto pieces = cons.omega.pieces();
  bool disjoint = pieces.size() == static_cast<std::size_t>(8 * n);
  for (std::size_t i = 0; i < pieces.size() && disjoint; ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (circle::arcs_overlap(pieces[i].arc, pieces[j].arc)) {
        disjoint = false;
        break;
      }
    }
  }
  const auto p = logkernel::profile(cons, kStructGrid);
  double excess = -1e300;
  for (std::size_t i = 0; i < p.m.size(); ++i) excess = std::max(excess, std::fabs(p.khat[i]) - p.m[i]);
  const auto coarse = logkernel::khat_oscillation(cons, kStructGrid);
  const auto fine = logkernel::khat_oscillation(cons, 4 * kStructGrid);
  bool continuity = true;
  double worst_ratio = 0.0;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    continuity = continuity && fine[k] < coarse[k];
    worst_ratio = std::max(worst_ratio, fine[k] / coarse[k]);
  }
  return {even && mean <= kMeanZeroTol && disjoint && excess <= 0.0 && continuity,
          std::string("even ") + (even ? "yes" : "no") + ", |mean| " + num(mean) + ", " +
              std::to_string(pieces.size()) + " disjoint arcs " + (disjoint ? "yes" : "no") +
              ", max(|K| - m) " + num(excess) + ", max oscillation ratio under 4x refinement " + num(worst_ratio)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli, const std::string& work) {
  if (cli.empty()) return {false, "no --cli given"};
  namespace fs = std::filesystem;
  const fs::path a = fs::path(work) / "determinism_a", b = fs::path(work) / "determinism_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const auto run = [&](const fs::path& out) {
    const std::string cmd = "\"" + cli + "\" verify --out \"" + out.string() + "\" > \"" + out.string() + ".log\" 2>&1";
    return std::system(cmd.c_str());
  };
  fs::create_directories(work);
  const int ra = run(a), rb = run(b);
  const std::string ja = slurp(a / "report.json"), jb = slurp(b / "report.json");
  const bool same = !ja.empty() && ja == jb;
  return {same, "exit statuses " + std::to_string(ra) + ", " + std::to_string(rb) + "; report.json " +
                    std::to_string(ja.size()) + " bytes, " + (same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string cli, work = "acceptance_runs";
  app.add_option("--cli", cli, "path to the roughcert executable");
  app.add_option("--work", work, "scratch directory for CLI runs");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 normalization", normalization},
      {"2 atom congruence", congruence},
      {"3 oracle equivalence", oracles},
      {"4 orlicz modular", orlicz_modular},
      {"5 sup bound", sup_bound},
      {"6 pair cancellation", pair_cancellation},
      {"7 separation", separation},
      {"8 rudin bound", rudin_bound},
      {"9 dirichlet norms", dirichlet},
      {"10 exponent growth", exponent_growth},
      {"11 structural invariants", structure},
      {"12 determinism", [&] { return determinism(cli, work); }},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s %-26s %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
