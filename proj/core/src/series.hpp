#pragma once

// Power series shared by the closed-form kernel integrals.

#include <array>
#include <cstddef>

namespace roughcert::logkernel::detail {

inline constexpr std::size_t kZetaTerms = 64;

/// zeta(2n) for n = 1..kZetaTerms, stored at index n - 1.
const std::array<long double, kZetaTerms>& even_zeta();

long double clausen2_ld(long double x);

/// int_0^s -log(cos u) du for |s| <= pi/4 (Lobachevsky's function).
long double lobachevsky(long double s);

/// int_0^s -log|sin u| du = s log 2 + Cl2(2s) / 2.
long double log_sine_integral(long double s);

}  // namespace roughcert::logkernel::detail
