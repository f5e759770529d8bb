#pragma once

// The kernel multiplier on the circle,
//
//   K(xi) = int Omega(theta) log(1 / |<xi, theta>|) dtheta,
//
// and its absolute majorant m(Omega)(xi), for piecewise-constant Omega.
// The integrand -log|cos(theta - xi)| is singular where theta - xi is an odd
// multiple of pi/2; every evaluation splits an arc into quarter-turn cells so
// the singular point, if any, sits at the origin of a cell.

#include <string>

#include "roughcert/circle.hpp"

namespace roughcert::logkernel {

/// Cl2(x) = sum_{k>=1} sin(kx)/k^2, absolute error below 1e-15.
double clausen2(double x);

enum class Method {
  closed_form,  // Clausen / Lobachevsky antiderivatives
  quadrature,   // adaptive Gauss-Kronrod with the log singularity subtracted
  series,       // short-arc expansions, accurate for lengths below ~1e-6
  automatic,    // series below kSeriesThreshold, closed form otherwise
};

/// Arc length below which `automatic` switches to the short-arc expansion.
inline constexpr double kSeriesThreshold = 1e-8;

std::string to_string(Method m);

/// int_a -log|cos(theta - xi)| dtheta.
/// `quad_tol` is the relative tolerance of Method::quadrature; non-convergence
/// throws NumericError carrying the worst subintervals.
double arc_log_integral(const circle::Arc& a, circle::Angle xi,
                        Method method = Method::automatic, double quad_tol = 1e-11);

struct KhatM {
  double khat = 0.0;
  double m = 0.0;
};

/// Both sums in one pass over the pieces (fixed summation order).
KhatM khat_and_m(const circle::ArcFunction& f, circle::Angle xi);

/// K_f(xi). Writes a warning to std::clog when f is not mean-zero, since the
/// formula is only the kernel multiplier for mean-zero f.
double khat(const circle::ArcFunction& f, circle::Angle xi);

double m_eval(const circle::ArcFunction& f, circle::Angle xi);

/// Height c making m(w)(e) = 1 for the atom w built on arc I, where I is
/// centered at e - pi/2.
double solve_c(const circle::Arc& I, circle::Angle e);

}  // namespace roughcert::logkernel
