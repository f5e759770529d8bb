#include "roughcert/trignorms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

#include "roughcert/error.hpp"

namespace roughcert::trignorms {

namespace {

constexpr double kPi = std::numbers::pi;

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// P(j / grid) for j = 0..grid-1.
std::vector<std::complex<double>> sample_values(std::span<const double> coeffs, std::size_t grid) {
  if (grid <= coeffs.size()) throw DomainError("sampling grid must exceed the degree");
  FftwBuffer buf(fftw_alloc_complex(grid));
  if (!buf) throw NumericError("fftw_alloc_complex failed");
  for (std::size_t j = 0; j < grid; ++j) buf[j][0] = buf[j][1] = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) buf[k + 1][0] = coeffs[k];
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(grid), buf.get(), buf.get(), FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::vector<std::complex<double>> out(grid);
  for (std::size_t j = 0; j < grid; ++j) out[j] = {buf[j][0], buf[j][1]};
  return out;
}

}  // namespace

circle::SignSequence rudin_shapiro(int n) {
  if (n < 1) throw DomainError("rudin_shapiro: n must be >= 1");
  std::vector<int> a(static_cast<std::size_t>(n));
  a[0] = 1;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const std::size_t k = i / 2;
    a[i] = (i % 2 == 0 || k % 2 == 0) ? a[k] : -a[k];
  }
  return {std::move(a)};
}

TrigPolynomial from_signs(const circle::SignSequence& s) {
  return {std::vector<double>(s.eps.begin(), s.eps.end())};
}

TrigPolynomial dirichlet(int n) {
  if (n < 1) throw DomainError("dirichlet: n must be >= 1");
  return {std::vector<double>(static_cast<std::size_t>(n), 1.0)};
}

std::vector<double> sample_abs(const TrigPolynomial& poly, std::size_t grid) {
  const auto values = sample_values(poly.coeffs, grid);
  std::vector<double> out(grid);
  std::transform(values.begin(), values.end(), out.begin(), [](auto z) { return std::abs(z); });
  return out;
}

LpEstimate lp_norm_estimate(const TrigPolynomial& poly, double p, int oversample) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("lp_norm: p must be a finite real >= 1");
  if (oversample < 4) throw DomainError("lp_norm: oversample must be >= 4");
  const std::size_t n = poly.degree();
  if (n == 0) return {0.0, 0.0, true};
  const std::size_t grid = static_cast<std::size_t>(oversample) * n;
  const auto values = sample_abs(poly, grid);
  const double top = *std::max_element(values.begin(), values.end());
  if (top == 0.0) return {0.0, 0.0, true};
  long double acc = 0.0L;
  for (double v : values) acc += std::pow(static_cast<long double>(v / top), p);
  const double value = top * static_cast<double>(std::pow(acc / grid, 1.0L / p));

  const bool even_integer = p == std::floor(p) && static_cast<long long>(p) % 2 == 0;
  const bool exact = even_integer && static_cast<double>(grid) > 0.5 * p * static_cast<double>(n - 1);
  double bound = 0.0;
  if (!exact) {
    // Step-function comparison: each cell deviates by at most pi n ||P||_inf / M.
    const double sup = top / (1.0 - kPi * static_cast<double>(n) / static_cast<double>(grid));
    bound = kPi * static_cast<double>(n) * sup / static_cast<double>(grid);
  }
  return {value, bound, exact};
}

double lp_norm(const TrigPolynomial& poly, double p, int oversample) {
  return lp_norm_estimate(poly, p, oversample).value;
}

SupEstimate sup_norm(const TrigPolynomial& poly, int oversample) {
  if (oversample < 16) throw DomainError("sup_norm: oversample must be >= 16");
  const std::size_t n = poly.degree();
  if (n == 0) return {};
  const std::size_t grid = static_cast<std::size_t>(oversample) * n;
  const auto values = sample_abs(poly, grid);
  const double top = *std::max_element(values.begin(), values.end());
  return {top, top / (1.0 - kPi * static_cast<double>(n) / static_cast<double>(grid))};
}

std::vector<SupEstimate> rudin_shapiro_sup_sweep(int n_max, int oversample) {
  if (n_max < 1) throw DomainError("rudin_shapiro_sup_sweep: n_max must be >= 1");
  if (oversample < 16) throw DomainError("rudin_shapiro_sup_sweep: oversample must be >= 16");
  const auto signs = rudin_shapiro(n_max);
  std::vector<SupEstimate> out(static_cast<std::size_t>(n_max));

  // Lengths in (2^{m-1}, 2^m] share a grid of oversample * 2^m points; the
  // prefix of length 2^{m-1} comes from one FFT and each further term is
  // added pointwise. Real coefficients make |P| symmetric about x = 1/2, so
  // half the grid suffices.
  for (long long top = 1, prefix = 0; prefix < n_max; prefix = top, top *= 2) {
    const std::size_t grid = static_cast<std::size_t>(oversample) * static_cast<std::size_t>(top);
    const std::size_t half = grid / 2 + 1;
    std::vector<double> pr(half), pi(half), wr(half), wi(half), zr(half), zi(half);
    if (prefix > 0) {
      const auto start = sample_values(
          std::vector<double>(signs.eps.begin(), signs.eps.begin() + prefix), grid);
      for (std::size_t j = 0; j < half; ++j) {
        pr[j] = start[j].real();
        pi[j] = start[j].imag();
      }
    }
    for (std::size_t j = 0; j < half; ++j) {
      const double step = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
      const auto first = static_cast<std::size_t>(prefix + 1) * j % grid;
      const double phase = 2.0 * kPi * static_cast<double>(first) / static_cast<double>(grid);
      zr[j] = std::cos(step);
      zi[j] = std::sin(step);
      wr[j] = std::cos(phase);
      wi[j] = std::sin(phase);
    }
    const long long last = std::min<long long>(top, n_max);
    for (long long n = prefix + 1; n <= last; ++n) {
      const double e = signs.eps[static_cast<std::size_t>(n - 1)];
      double best = 0.0;
      for (std::size_t j = 0; j < half; ++j) {
        pr[j] += e * wr[j];
        pi[j] += e * wi[j];
        const double r = wr[j] * zr[j] - wi[j] * zi[j];
        wi[j] = wr[j] * zi[j] + wi[j] * zr[j];
        wr[j] = r;
        const double mag = pr[j] * pr[j] + pi[j] * pi[j];
        best = mag > best ? mag : best;
      }
      const double gm = std::sqrt(best);
      out[static_cast<std::size_t>(n - 1)] = {
          gm, gm / (1.0 - kPi * static_cast<double>(n) / static_cast<double>(grid))};
    }
  }
  return out;
}

double dirichlet_norm(int n, double p, int oversample) {
  if (!(p > 1.0)) throw DomainError("dirichlet_norm: p must exceed 1");
  return lp_norm(dirichlet(n), p, oversample);
}

double unconditionality_ratio(int n, double p, int oversample) {
  if (!(p > 2.0) || !std::isfinite(p)) {
    throw DomainError("unconditionality_ratio: p must exceed 2 (use the conjugate exponent)");
  }
  return dirichlet_norm(n, p, oversample) / lp_norm(from_signs(rudin_shapiro(n)), p, oversample);
}

NormFit fit_exponent(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw DomainError("fit_exponent: need at least three samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [n, r] = samples[i];
    if (!(n > 0.0) || !(r > 0.0)) throw DomainError("fit_exponent: n and ratios must be positive");
    if (i > 0 && !(n > samples[i - 1].first)) {
      throw DomainError("fit_exponent: n must increase strictly (degenerate samples)");
    }
  }
  const auto m = static_cast<double>(samples.size());
  double sx = 0, sy = 0;
  for (const auto& [n, r] : samples) {
    sx += std::log(n);
    sy += std::log(r);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& [n, r] : samples) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r) - my);
  }
  NormFit fit;
  fit.samples.assign(samples.begin(), samples.end());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& [n, r] : samples) {
    fit.residual = std::max(fit.residual, std::fabs(std::log(r) - fit.intercept - fit.slope * std::log(n)));
  }
  return fit;
}

double conjugate(double p) {
  if (!(p > 1.0)) throw DomainError("conjugate: p must exceed 1");
  return std::isinf(p) ? 1.0 : p / (p - 1.0);
}

}  // namespace roughcert::trignorms
