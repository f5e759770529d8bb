#pragma once

// Norms of trigonometric polynomials sum_{k=1}^n a_k e^{2 pi i k x} on [0, 1).

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "roughcert/circle.hpp"

namespace roughcert::trignorms {

struct TrigPolynomial {
  std::vector<double> coeffs;  // a_1..a_n

  std::size_t degree() const noexcept { return coeffs.size(); }
};

/// First n terms of a_0 = 1, a_{2k} = a_k, a_{2k+1} = (-1)^k a_k.
circle::SignSequence rudin_shapiro(int n);

TrigPolynomial from_signs(const circle::SignSequence& s);
TrigPolynomial dirichlet(int n);

/// |P| on the uniform grid j / M, M = oversample * n.
std::vector<double> sample_abs(const TrigPolynomial& poly, std::size_t grid);

struct LpEstimate {
  double value = 0.0;
  /// Bound on |value - true norm|; zero when the grid rule is exact
  /// (p an even integer and M > (p/2)(n-1)).
  double error_bound = 0.0;
  bool exact = false;
};

/// (mean over the grid of |P|^p)^{1/p} with the uniform grid of
/// oversample * n points.
LpEstimate lp_norm_estimate(const TrigPolynomial& poly, double p, int oversample);
double lp_norm(const TrigPolynomial& poly, double p, int oversample);

struct SupEstimate {
  double grid_max = 0.0;
  /// grid_max / (1 - pi n / M): Bernstein's inequality turns the grid
  /// maximum into an upper bound for the true supremum.
  double upper_bound = 0.0;
};

SupEstimate sup_norm(const TrigPolynomial& poly, int oversample = 16);

/// Sup estimates of the Rudin-Shapiro polynomials of every length
/// 1..n_max, index n - 1. Each length is sampled on a grid of at least
/// oversample * n points.
std::vector<SupEstimate> rudin_shapiro_sup_sweep(int n_max, int oversample = 16);

double dirichlet_norm(int n, double p, int oversample = 16);

/// ||D_n||_p / ||sum eps_k e_k||_p with Rudin-Shapiro signs, p > 2.
double unconditionality_ratio(int n, double p, int oversample = 16);

struct NormFit {
  std::vector<std::pair<double, double>> samples;  // (n, ratio)
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |log ratio - fitted line|
};

/// Least squares line through (log n, log ratio).
NormFit fit_exponent(std::span<const std::pair<double, double>> samples);

/// Conjugate exponent p / (p - 1).
double conjugate(double p);

}  // namespace roughcert::trignorms
