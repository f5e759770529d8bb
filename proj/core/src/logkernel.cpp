#include "roughcert/logkernel.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "roughcert/error.hpp"
#include "series.hpp"

namespace roughcert::logkernel {

using circle::Angle;
using circle::Arc;
using circle::ArcFunction;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kHalfPi = 0.5L * kPi;
constexpr long double kQuarterPi = 0.25L * kPi;

// A piece of an arc inside one quarter-turn cell, in the cell's local
// coordinate s in [-pi/4, pi/4]. On a sine cell the integrand is -log|sin s|
// (singular at s = 0), on a cosine cell it is -log cos s (smooth).
struct CellPiece {
  bool sine = false;
  long double lo = 0.0L;
  long double hi = 0.0L;
};

// theta - xi runs over q*pi/2 + [rest - h, rest + h].
std::vector<CellPiece> split_into_cells(int q, long double rest, long double h) {
  std::vector<CellPiece> out;
  const long double a = rest - h;
  const long double b = rest + h;
  auto cell_of = [](long double t) { return static_cast<long long>(std::floor((t + kQuarterPi) / kHalfPi)); };
  const long long j_lo = cell_of(a);
  const long long j_hi = cell_of(b);
  for (long long j = j_lo; j <= j_hi; ++j) {
    const long double shift = static_cast<long double>(j) * kHalfPi;
    const long double lo = std::max(a, shift - kQuarterPi) - shift;
    const long double hi = std::min(b, shift + kQuarterPi) - shift;
    if (hi <= lo) continue;
    const bool sine = ((q + j) % 2 + 2) % 2 == 1;
    out.push_back({sine, lo, hi});
  }
  return out;
}

// int -log|s| ds antiderivative.
long double log_abs_antiderivative(long double s) {
  return s == 0.0L ? 0.0L : s - s * std::log(std::fabs(s));
}

long double neg_log_cos(long double s) {
  const long double sh = std::sin(0.5L * s);
  return -std::log1p(-2.0L * sh * sh);
}

// -log(sin s / s), smooth through s = 0.
long double neg_log_sinc(long double s) {
  if (std::fabs(s) < 1e-9L) return s * s / 6.0L;
  return -std::log(std::sin(s) / s);
}

long double closed_form_piece(const CellPiece& p) {
  if (p.sine) return detail::log_sine_integral(p.hi) - detail::log_sine_integral(p.lo);
  return detail::lobachevsky(p.hi) - detail::lobachevsky(p.lo);
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (7, 15).

constexpr long double kXgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
constexpr long double kWgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr long double kWg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct Segment {
  long double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod(const F& f, long double a, long double b) {
  const long double center = 0.5L * (a + b);
  const long double half = 0.5L * (b - a);
  const long double fc = f(center);
  long double kronrod = fc * kWgk[7];
  long double gauss = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const long double dx = half * kXgk[i];
    const long double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[i] * pair;
    if (i % 2 == 1) gauss += kWg[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

template <class F>
long double adaptive_integrate(const F& f, long double a, long double b, long double rel_tol,
                               long double abs_floor) {
  constexpr int kMaxSegments = 4000;
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, a, b);
  long double total = first.value;
  long double error = first.error;
  heap.push(first);
  int segments = 1;
  while (error > std::max(rel_tol * std::fabs(total), abs_floor)) {
    if (segments >= kMaxSegments) {
      std::ostringstream msg;
      msg.precision(10);
      msg << "arc_log_integral: quadrature did not converge on [" << static_cast<double>(a) << ", "
          << static_cast<double>(b) << "] after " << segments
          << " subdivisions; estimate " << static_cast<double>(total) << ", error "
          << static_cast<double>(error) << "; worst subintervals:";
      for (int i = 0; i < 5 && !heap.empty(); ++i) {
        const Segment s = heap.top();
        heap.pop();
        msg << " [" << static_cast<double>(s.a) << ", " << static_cast<double>(s.b)
            << "] err " << static_cast<double>(s.error) << ";";
      }
      throw NumericError(msg.str());
    }
    const Segment worst = heap.top();
    heap.pop();
    const long double mid = 0.5L * (worst.a + worst.b);
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  return total;
}

long double quadrature_piece(const CellPiece& p, long double rel_tol) {
  const long double floor = 1e-30L;
  if (!p.sine) return adaptive_integrate(neg_log_cos, p.lo, p.hi, rel_tol, floor);
  // -log|sin s| = -log|s| + (-log(sin s / s)); the first part exactly.
  const long double singular = log_abs_antiderivative(p.hi) - log_abs_antiderivative(p.lo);
  const long double smooth = adaptive_integrate(neg_log_sinc, p.lo, p.hi, rel_tol, floor);
  return singular + smooth;
}

// ---------------------------------------------------------------------------
// Short arcs: center s_c in cell-local coordinates, half length h.

long double series_arc(bool sine, long double sc, long double h) {
  if (sine && std::fabs(sc) <= 100.0L * h) {
    // Near the singular point: exact -log|s| part plus s^2/6 + s^4/180.
    auto smooth = [](long double s) {
      const long double s3 = s * s * s;
      return s3 / 18.0L + s3 * s * s / 900.0L;
    };
    return log_abs_antiderivative(sc + h) - log_abs_antiderivative(sc - h) + smooth(sc + h) -
           smooth(sc - h);
  }
  // Midpoint expansion: 2h f + h^3/3 f'' + h^5/60 f''''.
  long double f0, f2, f4;
  if (sine) {
    const long double sn = std::sin(sc);
    const long double csc2 = 1.0L / (sn * sn);
    const long double cot2 = csc2 - 1.0L;
    f0 = -std::log(std::fabs(sn));
    f2 = csc2;
    f4 = 4.0L * cot2 * csc2 + 2.0L * csc2 * csc2;
  } else {
    const long double cs = std::cos(sc);
    const long double sec2 = 1.0L / (cs * cs);
    const long double tan2 = sec2 - 1.0L;
    f0 = neg_log_cos(sc);
    f2 = sec2;
    f4 = 4.0L * tan2 * sec2 + 2.0L * sec2 * sec2;
  }
  const long double h3 = h * h * h;
  return 2.0L * h * f0 + h3 / 3.0L * f2 + h3 * h * h / 60.0L * f4;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::closed_form:
      return "closed_form";
    case Method::quadrature:
      return "quadrature";
    case Method::series:
      return "series";
    case Method::automatic:
      return "automatic";
  }
  return "unknown";
}

double arc_log_integral(const Arc& a, Angle xi, Method method, double quad_tol) {
  const auto [q, rest] = circle::displacement(a.center, xi);
  const long double h = 0.5L * a.length;
  if (method == Method::automatic) {
    method = a.length < kSeriesThreshold ? Method::series : Method::closed_form;
  }
  if (method == Method::series) {
    return static_cast<double>(series_arc(q % 2 == 1, rest, h));
  }
  long double total = 0.0L;
  for (const CellPiece& p : split_into_cells(q, rest, h)) {
    total += method == Method::closed_form ? closed_form_piece(p) : quadrature_piece(p, quad_tol);
  }
  return static_cast<double>(total);
}

KhatM khat_and_m(const ArcFunction& f, Angle xi) {
  long double k = 0.0L;
  long double m = 0.0L;
  for (const auto& p : f.pieces()) {
    const long double v = arc_log_integral(p.arc, xi);
    k += p.coeff * v;
    m += std::fabs(p.coeff) * v;
  }
  return {static_cast<double>(k), static_cast<double>(m)};
}

double khat(const ArcFunction& f, Angle xi) {
  const double mass = circle::integral(f);
  long double scale = 0.0L;
  for (const auto& p : f.pieces()) scale += std::fabs(p.coeff) * static_cast<long double>(p.arc.length);
  if (std::fabs(mass) > 1e-12L * scale) {
    std::clog << "warning: khat of a function with nonzero mean " << mass << '\n';
  }
  return khat_and_m(f, xi).khat;
}

double m_eval(const ArcFunction& f, Angle xi) { return khat_and_m(f, xi).m; }

double solve_c(const Arc& I, Angle e) {
  const long double off = circle::signed_difference(I.center, e.rotated_quarters(-1));
  if (std::fabs(off) > 1e-9L) {
    throw DomainError("solve_c: arc must be centered at e - pi/2");
  }
  long double denom = 0.0L;
  for (int j = 0; j < 4; ++j) {
    denom += arc_log_integral(circle::rotate_arc(I, Angle::quarters(j)), e);
  }
  if (!(denom > 0.0L) || !std::isfinite(static_cast<double>(denom))) {
    throw NumericError("solve_c: nonpositive normalisation integral");
  }
  return static_cast<double>(1.0L / denom);
}

}  // namespace roughcert::logkernel
