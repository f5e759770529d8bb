#include <cmath>
#include <numbers>

#include "roughcert/logkernel.hpp"
#include "series.hpp"

namespace roughcert::logkernel {

namespace detail {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kLn2 = std::numbers::ln2_v<long double>;

std::array<long double, kZetaTerms> make_even_zeta() {
  std::array<long double, kZetaTerms> z{};
  const long double p2 = kPi * kPi;
  z[0] = p2 / 6.0L;
  z[1] = p2 * p2 / 90.0L;
  z[2] = p2 * p2 * p2 / 945.0L;
  // Direct summation, smallest terms first; the tail past K is below
  // K^(1-2n) / (2n-1) <= 2000^-7 / 7 for n >= 4.
  constexpr int K = 2000;
  for (std::size_t n = 4; n <= kZetaTerms; ++n) {
    long double s = 0.0L;
    for (int k = K; k >= 1; --k) s += std::pow(static_cast<long double>(k), -2.0L * n);
    z[n - 1] = s;
  }
  return z;
}

}  // namespace

const std::array<long double, kZetaTerms>& even_zeta() {
  static const std::array<long double, kZetaTerms> table = make_even_zeta();
  return table;
}

long double clausen2_ld(long double x) {
  const long double two_pi = 2.0L * kPi;
  x -= two_pi * std::nearbyint(x / two_pi);
  if (x == 0.0L) return 0.0L;
  // Cl2(x) = x - x log|x| + x sum_n 2 zeta(2n) / (2n (2n+1)) (x / 2pi)^{2n}
  const auto& z = even_zeta();
  const long double r2 = (x / two_pi) * (x / two_pi);
  long double pw = 1.0L;
  long double sum = 0.0L;
  for (std::size_t n = 1; n <= kZetaTerms; ++n) {
    pw *= r2;
    const long double term = 2.0L * z[n - 1] * pw / (2.0L * n * (2.0L * n + 1.0L));
    sum += term;
    if (term < 1e-24L * (1.0L + sum)) break;
  }
  return x - x * std::log(std::fabs(x)) + x * sum;
}

long double lobachevsky(long double s) {
  // -log cos u = sum_n (4^n - 1) zeta(2n) / (n pi^{2n}) u^{2n}
  const auto& z = even_zeta();
  const long double a2 = (2.0L * s / kPi) * (2.0L * s / kPi);
  const long double b2 = (s / kPi) * (s / kPi);
  long double pa = 1.0L;
  long double pb = 1.0L;
  long double sum = 0.0L;
  for (std::size_t n = 1; n <= kZetaTerms; ++n) {
    pa *= a2;
    pb *= b2;
    const long double term = z[n - 1] * (pa - pb) / (n * (2.0L * n + 1.0L));
    sum += term;
    if (term < 1e-24L * sum) break;
  }
  return s * sum;
}

long double log_sine_integral(long double s) {
  return s * kLn2 + 0.5L * clausen2_ld(2.0L * s);
}

}  // namespace detail

double clausen2(double x) {
  if (!std::isfinite(x)) return std::nan("");
  return static_cast<double>(detail::clausen2_ld(x));
}

}  // namespace roughcert::logkernel
