#pragma once

// Young functions, Orlicz modulars and Luxemburg norms.

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roughcert/circle.hpp"

namespace roughcert::orlicz {

enum class Family { power_log, log_quotient, custom_table };

/// A Young function Phi(t) = int_0^t phi(u) du.
///
///   power_log(beta):  Phi(t) = t * log(e + t)^beta
///   log_quotient:     Phi(t) = t * log(e + t) / log(e + log(e + t))
///   custom_table:     monotone cubic (Fritsch-Carlson) through user knots
///
/// Cheap to copy; table data is shared.
class YoungFunction {
 public:
  static YoungFunction power_log(double beta);
  static YoungFunction log_quotient();
  /// Knots (t_i, Phi(t_i)) with t_0 = 0, Phi(t_0) = 0, strictly increasing t
  /// and nondecreasing secant slopes. Rejects (never repairs) other input.
  static YoungFunction custom_table(std::vector<std::pair<double, double>> knots);
  /// "power_log:0.5", "log_quotient", "custom_table:<path>".
  static YoungFunction parse(std::string_view spec);

  Family family() const noexcept { return family_; }
  double beta() const noexcept { return beta_; }
  std::string describe() const;

  /// Phi(t). Throws DomainError for negative t or t past the last knot.
  double phi(double t) const;
  /// The left-continuous density phi(t); phi(0) = 0.
  double density(double t) const;

 private:
  struct Table;

  Family family_ = Family::power_log;
  double beta_ = 1.0;
  std::string source_;
  std::shared_ptr<const Table> table_;
};

struct ScheduleParams {
  double N = 0.0;
  int n = 0;
};

double eval_phi(const YoungFunction& yf, double t);

/// Psi(t) = t log(e + t) / Phi(t).
double eval_psi(const YoungFunction& yf, double t);

/// int Phi(|f|) over the circle; exact for piecewise-constant f.
double modular(const YoungFunction& yf, const circle::ArcFunction& f);

/// inf{k > 0 : modular(f / k) <= 1}, by doubling and bisection to relative
/// tolerance tol in (0, 1e-3]. The returned k always satisfies
/// modular(f / k) <= 1.
double luxemburg_norm(const YoungFunction& yf, const circle::ArcFunction& f, double tol);

/// n = floor(Psi(N / log N)); N >= 100.
ScheduleParams schedule_n(const YoungFunction& yf, double N);

/// The implication "modular(f) < |||f||| implies |||f||| <= 1 + tol" on one
/// instance. The norm is computed to a much tighter tolerance than `tol`.
bool lemma_orlicz_check(const YoungFunction& yf, const circle::ArcFunction& f,
                        double tol = 1e-6);

}  // namespace roughcert::orlicz
