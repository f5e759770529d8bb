#include "roughcert/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>

#include "roughcert/construction.hpp"
#include "roughcert/error.hpp"
#include "roughcert/logkernel.hpp"
#include "roughcert/orlicz.hpp"
#include "roughcert/parallel.hpp"

namespace roughcert {

using circle::Angle;
using circle::Arc;
using circle::ArcFunction;
using circle::Construction;

namespace {

// Thresholds of the certified inequalities.
constexpr double kNormalizationTol = 1e-8;
constexpr double kCongruenceTol = 1e-10;
constexpr double kAbsDLow = 0.9;
constexpr double kAbsDHigh = 1.0;
constexpr double kQuadratureRelTol = 1e-9;
constexpr double kSeriesRelTol = 1e-8;
constexpr double kLuxemburgLow = 0.05;
constexpr double kLuxemburgHigh = 20.0;
constexpr double kLemmaTol = 1e-6;
constexpr double kSupBoundConstant = 10.0;
constexpr double kPairConstant = 100.0;
constexpr double kGridStability = 2.0;
constexpr double kDecayConstant = 50.0;
constexpr double kMarginMax = 0.25;
constexpr double kKhatSlack = 1e-10;
constexpr double kMeanZeroTol = 1e-12;
constexpr double kSupportRelTol = 1e-12;
constexpr double kRudinConstant = 5.0;
constexpr double kDirichletRelTol = 1e-6;
constexpr double kDirichletBand = 2.0;
constexpr double kSlopeTol = 0.10;
constexpr double kResidualMax = 0.15;

constexpr std::size_t kOracleCases = 1000;
constexpr std::size_t kLemmaCases = 200;
constexpr std::size_t kEvenSamples = 10000;
constexpr int kRudinMax = 1 << 14;
constexpr std::uint64_t kSeed = 0x5eed'0f'c1'2c'1eULL;

// splitmix64; portable, unlike the std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

 private:
  std::uint64_t state_;
};

std::string format_p(double p) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, p);
  std::string s(buf, r.ptr);
  std::replace(s.begin(), s.end(), '.', '_');
  return s;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

class Checks {
 public:
  explicit Checks(VerificationReport& r) : r_(r) {}

  // passed = measured <= threshold
  void at_most(std::string name, double measured, double threshold, std::string detail) {
    add(std::move(name), measured <= threshold, measured, threshold, std::move(detail));
  }
  void add(std::string name, bool passed, double measured, double threshold, std::string detail) {
    r_.checks.push_back({std::move(name), passed, false, measured, threshold, std::move(detail)});
  }
  void skip(std::string name, double threshold, std::string why) {
    r_.checks.push_back({std::move(name), false, true, nan(), threshold, std::move(why)});
  }

 private:
  VerificationReport& r_;
};

// Runs one stage; on failure marks the report aborted and returns false.
bool stage(VerificationReport& r, const char* name, const std::function<void()>& fn) {
  try {
    fn();
    return true;
  } catch (const std::exception& e) {
    r.aborted = true;
    r.abort_stage = name;
    r.abort_message = e.what();
    return false;
  }
}

std::vector<ExponentFit> exponent_fits(const std::vector<double>& ps, int oversample) {
  std::vector<ExponentFit> out;
  for (double p : ps) {
    const double q = p > 2.0 ? p : trignorms::conjugate(p);
    if (!(q > 2.0)) continue;
    if (std::any_of(out.begin(), out.end(), [&](const ExponentFit& f) { return f.p == q; })) continue;
    std::vector<std::pair<double, double>> samples;
    for (int e = 4; e <= 12; ++e) {
      samples.emplace_back(std::ldexp(1.0, e), trignorms::unconditionality_ratio(1 << e, q, oversample));
    }
    out.push_back({q, 0.5 - 1.0 / q, trignorms::fit_exponent(samples)});
  }
  return out;
}

ArcFunction random_arc_function(Rng& rng) {
  // At most one arc per sector of width pi/8, so arcs never overlap.
  constexpr int kSectors = 16;
  constexpr double kWidth = circle::kTwoPi / kSectors;
  std::vector<circle::Piece> pieces;
  for (int j = 0; j < kSectors; ++j) {
    if (rng.uniform() < 0.6) continue;
    const double len = rng.uniform(0.01, 0.9) * kWidth;
    const double center = kWidth * j + 0.5 * kWidth + rng.uniform(-0.5, 0.5) * (kWidth - len) * 0.99;
    double coeff = rng.uniform(-3.0, 3.0);
    if (coeff == 0.0) coeff = 1.0;
    pieces.push_back({circle::make_arc(Angle::radians(center), len), coeff});
  }
  return ArcFunction(std::move(pieces));
}

void random_case(Rng& rng, double len_lo, double len_hi, Arc& arc, Angle& xi) {
  const double len = rng.log_uniform(len_lo, len_hi);
  arc = circle::make_arc(Angle::radians(rng.uniform(0.0, circle::kTwoPi)), len);
  xi = Angle::radians(rng.uniform(0.0, circle::kTwoPi));
}

double rel_error(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

void fill_geometry(ConstructionSummary& s, const Construction& cons) {
  s.N = cons.N();
  s.n = cons.n();
  s.s = cons.dirs.s;
  s.t_start = cons.dirs.t_start;
  s.t_step = cons.dirs.t_step;
  s.c = cons.c;
}

Construction build(const RunConfig& cfg) {
  return circle::build_construction({cfg.N, cfg.n}, cfg.geometry);
}

}  // namespace

ConstructionSummary::ConstructionSummary()
    : c(nan()), absD(nan()), margin(nan()), modular(nan()), luxemburg(nan()), sup_m(nan()),
      c7(nan()), c8(nan()), ratio_p4(nan()), slope_p4(nan()) {}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool VerificationReport::all_passed() const {
  return !aborted && std::all_of(checks.begin(), checks.end(),
                                 [](const CheckRecord& c) { return c.skipped || c.passed; });
}

int VerificationReport::exit_code() const {
  if (aborted) return 3;
  return all_passed() ? 0 : 1;
}

OracleStats quadrature_agreement(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  OracleStats st{cases, 0.0};
  for (std::size_t i = 0; i < cases; ++i) {
    Arc arc;
    Angle xi;
    random_case(rng, 1e-6, 0.3, arc, xi);
    const double a = logkernel::arc_log_integral(arc, xi, logkernel::Method::closed_form);
    const double b = logkernel::arc_log_integral(arc, xi, logkernel::Method::quadrature, 1e-11);
    st.max_rel_error = std::max(st.max_rel_error, rel_error(a, b));
  }
  return st;
}

OracleStats series_agreement(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  OracleStats st{cases, 0.0};
  for (std::size_t i = 0; i < cases; ++i) {
    Arc arc;
    Angle xi;
    random_case(rng, 1e-8, 1e-6, arc, xi);
    const double a = logkernel::arc_log_integral(arc, xi, logkernel::Method::series);
    const double b = logkernel::arc_log_integral(arc, xi, logkernel::Method::closed_form);
    st.max_rel_error = std::max(st.max_rel_error, rel_error(a, b));
  }
  return st;
}

std::size_t lemma_failures(const orlicz::YoungFunction& yf, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!orlicz::lemma_orlicz_check(yf, random_arc_function(rng), kLemmaTol)) ++failures;
  }
  return failures;
}

VerificationReport run_verify(const RunConfig& cfg) {
  VerificationReport r;
  r.config = cfg;
  Checks checks(r);
  const int jobs = cfg.jobs;
  Construction cons;

  if (!stage(r, "construction", [&] { cons = build(cfg); })) return r;
  fill_geometry(r.summary, cons);
  const auto n = static_cast<std::size_t>(cons.n());
  const double logN = std::log(cons.N());
  for (const Arc& j : cons.J) r.guards.push_back(j);

  if (!stage(r, "normalization", [&] {
        std::vector<double> dev(2 * n);
        parallel_for(2 * n, jobs, [&](std::size_t i) {
          dev[i] = std::fabs(logkernel::m_eval(cons.atom(i + 1), cons.direction(i + 1)) - 1.0);
        });
        checks.at_most("normalization", *std::max_element(dev.begin(), dev.end()), kNormalizationTol,
                       "max_k |m(w_k)(e_k) - 1|");
      })) {
    return r;
  }

  logkernel::DDelta dd;
  if (!stage(r, "congruence", [&] {
        double c_spread = 0.0;
        for (std::size_t k = 1; k <= 2 * n; ++k) {
          const double ck = logkernel::solve_c(cons.I[k - 1], cons.direction(k));
          c_spread = std::max(c_spread, rel_error(ck, cons.c));
        }
        dd = logkernel::d_delta(cons);
        r.summary.absD = std::fabs(dd.D);
        r.summary.margin = dd.margin;
        checks.at_most("atom_congruence", std::max(c_spread, dd.D_spread), kCongruenceTol,
                       "max(relative spread of c over k, spread of D over k)");
        checks.add("abs_D", r.summary.absD >= kAbsDLow && r.summary.absD <= kAbsDHigh, r.summary.absD,
                   kAbsDLow, "|D| must lie in [0.9, 1]");
      })) {
    return r;
  }

  if (!stage(r, "oracles", [&] {
        checks.at_most("oracle_quadrature", quadrature_agreement(kOracleCases, kSeed).max_rel_error,
                       kQuadratureRelTol, "max relative gap, closed form vs adaptive quadrature");
        checks.at_most("oracle_series", series_agreement(kOracleCases, kSeed + 1).max_rel_error,
                       kSeriesRelTol, "max relative gap, short-arc series vs closed form");
      })) {
    return r;
  }

  if (!stage(r, "orlicz", [&] {
        const auto yf = cfg.young();
        r.summary.modular = orlicz::modular(yf, cons.omega);
        r.summary.luxemburg = orlicz::luxemburg_norm(yf, cons.omega, cfg.tol);
        if (cfg.mode == Mode::schedule) {
          checks.add("luxemburg_range",
                     r.summary.luxemburg >= kLuxemburgLow && r.summary.luxemburg <= kLuxemburgHigh,
                     r.summary.luxemburg, kLuxemburgHigh, "Luxemburg norm of Omega_n in [0.05, 20]");
        } else {
          checks.skip("luxemburg_range", kLuxemburgHigh, "only meaningful under the N -> n schedule");
        }
        std::size_t failures = orlicz::lemma_orlicz_check(yf, cons.omega, kLemmaTol) ? 0 : 1;
        failures += lemma_failures(yf, kLemmaCases, kSeed + 2);
        checks.at_most("lemma_orlicz", static_cast<double>(failures), 0.0,
                       "instances with modular < norm but norm > 1 + 1e-6 (Omega_n + 200 random)");
      })) {
    return r;
  }

  if (!stage(r, "profile", [&] {
        const auto p = logkernel::profile(cons, cfg.grid, jobs);
        r.summary.sup_m = p.sup_m;
        const double nd = static_cast<double>(n);
        const double scale = 1.0 + nd * std::log(nd) / logN;
        checks.at_most("sup_bound", p.sup_m / scale, kSupBoundConstant,
                       "grid sup of m(Omega_n) / (1 + n log n / log N)");
        double excess = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < p.grid.size(); ++i) {
          excess = std::max(excess, std::fabs(p.khat[i]) - p.m[i]);
        }
        checks.at_most("khat_le_m", excess, kKhatSlack, "max over the grid of |K| - m");

        checks.add("evenness", circle::is_even(cons.omega, kEvenSamples), 0.0, 0.0,
                   "Omega_n(theta) == Omega_n(theta + pi) on 1e4 samples and all piece centers");
        checks.at_most("mean_zero", std::fabs(circle::integral(cons.omega)), kMeanZeroTol,
                       "|integral of Omega_n|");
        const double expected = 8.0 * nd / cons.N();
        const double measure_err = rel_error(circle::support_measure(cons.omega), expected);
        const bool count_ok = cons.omega.size() == 8 * n;
        checks.add("disjoint_support", count_ok && measure_err <= kSupportRelTol, measure_err,
                   kSupportRelTol, "8n disjoint arcs; relative error of the support measure vs 8n/N");

        const auto coarse = logkernel::khat_oscillation(cons, cfg.grid);
        const auto fine = logkernel::khat_oscillation(cons, 4 * cfg.grid);
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, fine[k] / coarse[k]);
        checks.add("khat_continuity", worst < 1.0, worst, 1.0,
                   "max_k oscillation at x_2k after 4x refinement / before (must be < 1)");
      })) {
    return r;
  }

  if (!stage(r, "estimates", [&] {
        if (n >= 2) {
          std::vector<double> c7(2 * n);
          parallel_for(2 * n, jobs, [&](std::size_t i) {
            c7[i] = logkernel::atom_decay_constant(cons, i + 1, cfg.grid);
          });
          r.summary.c7 = *std::max_element(c7.begin(), c7.end());
          checks.at_most("atom_decay", r.summary.c7, kDecayConstant,
                         "max_k of sup m(w_k) off the guard arcs * log N / log n");
        } else {
          checks.skip("atom_decay", kDecayConstant, "needs n >= 2");
        }
        std::vector<double> base(n), doubled(n);
        parallel_for(n, jobs, [&](std::size_t i) {
          base[i] = logkernel::pair_difference_constant(cons, i + 1, cfg.grid);
          doubled[i] = logkernel::pair_difference_constant(cons, i + 1, 2 * cfg.grid);
        });
        double worst_ratio = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          worst_ratio = std::max({worst_ratio, doubled[i] / base[i], base[i] / doubled[i]});
        }
        r.summary.c8 = *std::max_element(base.begin(), base.end());
        checks.at_most("pair_cancellation", r.summary.c8, kPairConstant,
                       "max_k |K_{w_2k} - K_{w_2k-1}| * n log N * |x - x_2k| off the guard arcs");
        checks.at_most("pair_grid_stability", worst_ratio, kGridStability,
                       "max_k ratio of the pair constant under grid doubling");
      })) {
    return r;
  }

  if (!stage(r, "separation", [&] {
        const double nd = static_cast<double>(n);
        if (std::log(nd) / logN <= 0.125) {
          checks.at_most("separation", dd.margin, kMarginMax, "max_k |delta_k| / |D|");
        } else {
          checks.skip("separation", kMarginMax, "needs log n / log N <= 1/8");
        }
        std::vector<double> margins;
        for (int e : {32, 48, 64}) {
          RunConfig at = cfg;
          at.N = std::ldexp(1.0, e);
          margins.push_back(logkernel::d_delta(build(at)).margin);
        }
        double rise = 0.0;
        for (std::size_t i = 1; i < margins.size(); ++i) rise = std::max(rise, margins[i] - margins[i - 1]);
        checks.at_most("separation_monotone", rise, 0.0,
                       "largest increase of the margin along N = 2^32, 2^48, 2^64");
      })) {
    return r;
  }

  if (!stage(r, "trignorms", [&] {
        const auto sweep = trignorms::rudin_shapiro_sup_sweep(kRudinMax, cfg.oversample);
        double rudin = 0.0;
        for (std::size_t k = 0; k < sweep.size(); ++k) {
          rudin = std::max(rudin, sweep[k].upper_bound / std::sqrt(static_cast<double>(k + 1)));
        }
        checks.at_most("rudin_bound", rudin, kRudinConstant,
                       "max over n <= 2^14 of (sup bound of the RS polynomial) / sqrt n");

        double l4 = 0.0;
        for (int m : {2, 8, 64, 1024}) {
          const double md = m;
          const double exact = std::pow((2.0 * md * md * md + md) / 3.0, 0.25);
          l4 = std::max(l4, rel_error(trignorms::dirichlet_norm(m, 4.0, cfg.oversample), exact));
        }
        checks.at_most("dirichlet_l4", l4, kDirichletRelTol,
                       "max relative error of ||D_n||_4 vs ((2n^3 + n)/3)^(1/4)");
        double band = 1.0;
        for (double p : {4.0, 8.0}) {
          double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
          for (int e = 6; e <= 14; ++e) {
            const double v = trignorms::dirichlet_norm(1 << e, p, cfg.oversample) /
                             std::pow(std::ldexp(1.0, e), 1.0 - 1.0 / p);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
          band = std::max(band, hi / lo);
        }
        checks.at_most("dirichlet_band", band, kDirichletBand,
                       "max over p in {4, 8} of max/min of ||D_n||_p / n^(1-1/p), n = 2^6..2^14");

        std::vector<double> ps = cfg.p;
        ps.push_back(4.0);
        r.fits = exponent_fits(ps, cfg.oversample);
        for (const auto& f : r.fits) {
          if (f.p == 4.0) r.summary.slope_p4 = f.fit.slope;
        }
        r.summary.ratio_p4 = trignorms::unconditionality_ratio(static_cast<int>(n), 4.0, cfg.oversample);
        for (double p : cfg.p) {
          const std::string tag = format_p(p);
          const double q = p > 2.0 ? p : trignorms::conjugate(p);
          if (n < 8 || !(q > 2.0)) {
            const std::string why = n < 8 ? "needs n >= 8" : "p = 2 has no growth to fit";
            checks.skip("exponent_p" + tag, kSlopeTol, why);
            checks.skip("exponent_residual_p" + tag, kResidualMax, why);
            continue;
          }
          const auto& f = *std::find_if(r.fits.begin(), r.fits.end(),
                                        [&](const ExponentFit& e) { return e.p == q; });
          checks.at_most("exponent_p" + tag, std::fabs(f.fit.slope - f.target), kSlopeTol,
                         "|fitted slope - (1/2 - 1/p)| over n = 2^4..2^12" +
                             std::string(q != p ? " (conjugate exponent)" : ""));
          checks.at_most("exponent_residual_p" + tag, f.fit.residual, kResidualMax,
                         "max |log ratio - fitted line|");
        }
      })) {
    return r;
  }

  stage(r, "determinism", [&] {
    const auto grid = logkernel::window_grid(cfg.grid);
    auto a = logkernel::profile(cons, grid, 1);
    const auto b = logkernel::profile(cons, grid, std::max(2, jobs));
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::memcmp(&a.khat[i], &b.khat[i], sizeof(double)) != 0 ||
          std::memcmp(&a.m[i], &b.m[i], sizeof(double)) != 0) {
        ++mismatches;
      }
    }
    checks.at_most("determinism", static_cast<double>(mismatches), 0.0,
                   "window-profile entries differing bitwise between 1 and several threads");
    r.window_profile = std::move(a);
  });
  return r;
}

VerificationReport run_profile(const RunConfig& cfg) {
  VerificationReport r;
  r.config = cfg;
  Construction cons;
  if (!stage(r, "construction", [&] { cons = build(cfg); })) return r;
  fill_geometry(r.summary, cons);
  for (const Arc& j : cons.J) r.guards.push_back(j);
  stage(r, "profile", [&] {
    auto p = logkernel::profile(cons, logkernel::window_grid(cfg.grid), cfg.jobs);
    r.summary.absD = std::fabs(p.D);
    r.summary.margin = p.margin;
    r.window_profile = std::move(p);
    std::vector<double> ps = cfg.p;
    ps.push_back(4.0);
    r.fits = exponent_fits(ps, cfg.oversample);
    for (const auto& f : r.fits) {
      if (f.p == 4.0) r.summary.slope_p4 = f.fit.slope;
    }
  });
  return r;
}

std::vector<VerificationReport> run_sweep(const RunConfig& cfg, Axis axis,
                                          const std::vector<double>& values) {
  if (values.size() < 2) throw ParameterError("sweep: needs at least two axis values");
  if (axis == Axis::n && cfg.mode == Mode::schedule) {
    throw ParameterError("sweep: n is derived from N in schedule mode; sweep N instead");
  }
  std::vector<VerificationReport> out(values.size());
  const int inner_jobs = cfg.jobs > 1 ? 1 : cfg.jobs;
  parallel_for(values.size(), cfg.jobs, [&](std::size_t i) {
    RunConfig point = cfg;
    point.jobs = inner_jobs;
    if (axis == Axis::N) {
      point.N = values[i];
    } else {
      point.n = static_cast<int>(values[i]);
    }
    try {
      validate_config(point);
    } catch (const std::exception& e) {
      out[i].config = point;
      out[i].aborted = true;
      out[i].abort_stage = "config";
      out[i].abort_message = e.what();
      return;
    }
    out[i] = run_verify(point);
  });
  return out;
}

}  // namespace roughcert
