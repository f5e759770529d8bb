#include "roughcert/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "roughcert/error.hpp"

namespace roughcert::orlicz {

namespace {

constexpr double kE = std::numbers::e;

double log_e_plus(double t) { return std::log(kE + t); }

}  // namespace

// Piecewise cubic Hermite data for custom_table.
struct YoungFunction::Table {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> d;  // derivative at each knot

  std::size_t interval(double x) const {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    auto i = static_cast<std::size_t>(it - t.begin());
    return i == 0 ? 0 : std::min(i - 1, t.size() - 2);
  }

  double value(double x) const {
    const std::size_t i = interval(x);
    const double h = t[i + 1] - t[i];
    const double s = (x - t[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
  }

  double slope(double x) const {
    const std::size_t i = interval(x);
    const double h = t[i + 1] - t[i];
    const double s = (x - t[i]) / h;
    const double dh00 = 6 * s * s - 6 * s;
    const double dh10 = 3 * s * s - 4 * s + 1;
    const double dh01 = -dh00;
    const double dh11 = 3 * s * s - 2 * s;
    return (dh00 * y[i] + dh01 * y[i + 1]) / h + dh10 * d[i] + dh11 * d[i + 1];
  }
};

YoungFunction YoungFunction::power_log(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("power_log: beta must be a positive real");
  }
  YoungFunction yf;
  yf.family_ = Family::power_log;
  yf.beta_ = beta;
  return yf;
}

YoungFunction YoungFunction::log_quotient() {
  YoungFunction yf;
  yf.family_ = Family::log_quotient;
  yf.beta_ = 0.0;
  return yf;
}

YoungFunction YoungFunction::custom_table(std::vector<std::pair<double, double>> knots) {
  auto reject = [](const std::string& what) -> void {
    throw DomainError("custom_table: " + what);
  };
  if (knots.size() < 3) reject("need at least three knots");
  if (knots.front().first != 0.0 || knots.front().second != 0.0) {
    reject("first knot must be (0, 0)");
  }
  auto table = std::make_shared<Table>();
  for (const auto& [t, y] : knots) {
    if (!std::isfinite(t) || !std::isfinite(y)) reject("knots must be finite");
    if (!table->t.empty() && !(t > table->t.back())) reject("knot abscissae must increase strictly");
    if (!table->y.empty() && y < table->y.back()) reject("Phi must be nondecreasing");
    table->t.push_back(t);
    table->y.push_back(y);
  }
  const std::size_t m = table->t.size();
  std::vector<double> h(m - 1), delta(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    h[i] = table->t[i + 1] - table->t[i];
    delta[i] = (table->y[i + 1] - table->y[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (delta[i] < delta[i - 1] * (1.0 - 1e-12)) {
      reject("secant slopes decrease at knot " + std::to_string(i) + " (not convex)");
    }
  }
  auto& d = table->d;
  d.assign(m, 0.0);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (delta[i - 1] <= 0.0 || delta[i] <= 0.0) {
      d[i] = 0.0;
      continue;
    }
    const double w1 = 2 * h[i] + h[i - 1];
    const double w2 = h[i] + 2 * h[i - 1];
    d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  // End derivatives chosen so the end intervals have zero curvature at the
  // outer knot.
  d[0] = std::clamp(0.5 * (3 * delta[0] - d[1]), 0.0, delta[0]);
  d[m - 1] = std::max(0.5 * (3 * delta[m - 2] - d[m - 2]), delta[m - 2]);
  // Hermite cubic on [t_i, t_{i+1}] is convex iff its second derivative is
  // nonnegative at both ends.
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double slack = 1e-12 * std::max(1.0, std::fabs(delta[i]));
    if (2 * d[i] + d[i + 1] > 3 * delta[i] + slack || 3 * delta[i] > d[i] + 2 * d[i + 1] + slack) {
      reject("interpolant is not convex on interval " + std::to_string(i));
    }
  }
  YoungFunction yf;
  yf.family_ = Family::custom_table;
  yf.beta_ = 0.0;
  yf.table_ = std::move(table);
  return yf;
}

YoungFunction YoungFunction::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string family(spec.substr(0, colon));
  const std::string arg = colon == std::string_view::npos ? "" : std::string(spec.substr(colon + 1));
  if (family == "power_log") {
    if (arg.empty()) throw DomainError("power_log needs a parameter, e.g. power_log:0.5");
    std::size_t used = 0;
    double beta = 0.0;
    try {
      beta = std::stod(arg, &used);
    } catch (const std::exception&) {
      throw DomainError("power_log: cannot parse beta '" + arg + "'");
    }
    if (used != arg.size()) throw DomainError("power_log: cannot parse beta '" + arg + "'");
    return power_log(beta);
  }
  if (family == "log_quotient") {
    if (!arg.empty()) throw DomainError("log_quotient takes no parameter");
    return log_quotient();
  }
  if (family == "custom_table") {
    std::ifstream in(arg);
    if (!in) throw DomainError("custom_table: cannot open '" + arg + "'");
    std::vector<std::pair<double, double>> knots;
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream row(line);
      double t = 0.0, y = 0.0;
      if (!(row >> t)) continue;
      if (!(row >> y)) throw DomainError("custom_table: malformed row '" + line + "'");
      knots.emplace_back(t, y);
    }
    YoungFunction yf = custom_table(std::move(knots));
    yf.source_ = arg;
    return yf;
  }
  throw DomainError("unknown Young function family '" + family + "'");
}

std::string YoungFunction::describe() const {
  switch (family_) {
    case Family::power_log: {
      std::ostringstream s;
      s << "power_log:" << beta_;
      return s.str();
    }
    case Family::log_quotient:
      return "log_quotient";
    case Family::custom_table:
      return "custom_table:" + source_;
  }
  return {};
}

double YoungFunction::phi(double t) const {
  if (!(t >= 0.0)) throw DomainError("Phi: argument must be nonnegative");
  if (t == 0.0) return 0.0;
  switch (family_) {
    case Family::power_log:
      return t * std::pow(log_e_plus(t), beta_);
    case Family::log_quotient: {
      const double L = log_e_plus(t);
      return t * L / log_e_plus(L);
    }
    case Family::custom_table:
      if (t > table_->t.back()) throw DomainError("Phi: argument beyond the last table knot");
      return table_->value(t);
  }
  return 0.0;
}

double YoungFunction::density(double t) const {
  if (!(t >= 0.0)) throw DomainError("phi: argument must be nonnegative");
  if (t == 0.0) return 0.0;
  switch (family_) {
    case Family::power_log: {
      const double L = log_e_plus(t);
      return std::pow(L, beta_) + beta_ * t * std::pow(L, beta_ - 1.0) / (kE + t);
    }
    case Family::log_quotient: {
      const double L = log_e_plus(t);
      const double M = log_e_plus(L);
      const double dL = 1.0 / (kE + t);
      return L / M + t * dL * (M - L / (kE + L)) / (M * M);
    }
    case Family::custom_table:
      if (t > table_->t.back()) throw DomainError("phi: argument beyond the last table knot");
      return table_->slope(t);
  }
  return 0.0;
}

double eval_phi(const YoungFunction& yf, double t) {
  if (!std::isfinite(t)) throw DomainError("Phi: argument must be finite");
  return yf.phi(t);
}

double eval_psi(const YoungFunction& yf, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("Psi: argument must be positive");
  const double p = yf.phi(t);
  if (p == 0.0) throw DomainError("Psi: Phi(t) vanishes");
  return t * log_e_plus(t) / p;
}

namespace {

long double scaled_modular(const YoungFunction& yf, const circle::ArcFunction& f, double k) {
  long double s = 0.0L;
  for (const auto& p : f.pieces()) {
    s += static_cast<long double>(yf.phi(std::fabs(p.coeff) / k)) * p.arc.length;
  }
  return s;
}

}  // namespace

double modular(const YoungFunction& yf, const circle::ArcFunction& f) {
  return static_cast<double>(scaled_modular(yf, f, 1.0));
}

double luxemburg_norm(const YoungFunction& yf, const circle::ArcFunction& f, double tol) {
  if (!(tol > 0.0 && tol <= 1e-3)) throw DomainError("luxemburg_norm: tol must lie in (0, 1e-3]");
  if (f.empty()) return 0.0;
  constexpr int kBracketCap = 4000;
  constexpr int kBisectionCap = 200;

  auto inside = [&](double k) { return scaled_modular(yf, f, k) <= 1.0L; };
  double hi = circle::max_abs_coeff(f);
  int steps = 0;
  while (!inside(hi)) {
    hi *= 2.0;
    if (++steps > kBracketCap || !std::isfinite(hi)) {
      throw NumericError("luxemburg_norm: no upper bracket found");
    }
  }
  double lo = hi;
  steps = 0;
  while (inside(lo)) {
    lo *= 0.5;
    if (++steps > kBracketCap || lo == 0.0) {
      throw NumericError("luxemburg_norm: no lower bracket found");
    }
  }
  for (int it = 0; it < kBisectionCap; ++it) {
    if (hi - lo <= tol * hi) return hi;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return hi;
    (inside(mid) ? hi : lo) = mid;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "luxemburg_norm: bisection did not converge; bracket [" << lo << ", " << hi << "]";
  throw NumericError(msg.str());
}

ScheduleParams schedule_n(const YoungFunction& yf, double N) {
  if (!(N >= 100.0) || !std::isfinite(N)) throw DomainError("schedule_n: N must be >= 100");
  const double psi = eval_psi(yf, N / std::log(N));
  if (psi < 1.0) throw ParameterError("schedule degenerate; increase N");
  if (psi >= static_cast<double>(std::numeric_limits<int>::max())) {
    throw ParameterError("schedule_n: n does not fit in an int");
  }
  return {N, static_cast<int>(std::floor(psi))};
}

bool lemma_orlicz_check(const YoungFunction& yf, const circle::ArcFunction& f, double tol) {
  const double mod = modular(yf, f);
  const double norm = luxemburg_norm(yf, f, 1e-12);
  return !(mod < norm) || norm <= 1.0 + tol;
}

}  // namespace roughcert::orlicz
