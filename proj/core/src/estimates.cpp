#include "roughcert/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughcert/error.hpp"
#include "roughcert/logkernel.hpp"
#include "roughcert/parallel.hpp"

namespace roughcert::logkernel {

using circle::Angle;
using circle::Arc;
using circle::ArcFunction;
using circle::Construction;

namespace {

constexpr double kWindowStart = circle::kHalfPi;
constexpr double kWindowEnd = 0.75 * circle::kPi;

std::vector<Angle> outside(std::vector<Angle> grid, std::span<const Arc> excluded) {
  std::erase_if(grid, [&](Angle x) {
    return std::any_of(excluded.begin(), excluded.end(),
                       [&](const Arc& a) { return in_rotations(a, x); });
  });
  return grid;
}

template <class Fn>
double grid_max(const std::vector<Angle>& grid, int jobs, Fn&& fn) {
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) { values[i] = fn(grid[i]); });
  return *std::max_element(values.begin(), values.end());
}

void check_index(std::size_t k, std::size_t upper, const char* what) {
  if (k < 1 || k > upper) {
    throw ParameterError(std::string(what) + ": index out of range");
  }
}

}  // namespace

std::vector<Angle> window_grid(std::size_t G) {
  if (G == 0) throw ParameterError("window_grid: empty grid");
  std::vector<Angle> out;
  out.reserve(G);
  const double step = (kWindowEnd - kWindowStart) / static_cast<double>(G);
  for (std::size_t j = 0; j < G; ++j) {
    out.push_back(Angle::quarters(1, (static_cast<double>(j) + 0.5) * step));
  }
  return out;
}

std::vector<Angle> circle_grid(std::size_t G) {
  if (G == 0) throw ParameterError("circle_grid: empty grid");
  std::vector<Angle> out;
  out.reserve(G);
  const double step = circle::kTwoPi / static_cast<double>(G);
  if (G % 4 == 0) {
    // Exact quarter points, so the grid is invariant under quarter rotations.
    const std::size_t q = G / 4;
    for (std::size_t j = 0; j < G; ++j) {
      out.push_back(Angle::quarters(static_cast<int>(j / q), step * static_cast<double>(j % q)));
    }
    return out;
  }
  for (std::size_t j = 0; j < G; ++j) {
    out.push_back(Angle::radians(circle::kTwoPi * static_cast<double>(j) / static_cast<double>(G)));
  }
  return out;
}

bool in_rotations(const Arc& a, Angle theta) {
  for (int j = 0; j < 4; ++j) {
    if (circle::rotate_arc(a, Angle::quarters(j)).contains(theta)) return true;
  }
  return false;
}

double atom_decay_constant(const Construction& cons, std::size_t k, std::size_t G, int jobs) {
  check_index(k, cons.atoms.size(), "atom_decay_constant");
  if (cons.n() < 2) throw ParameterError("atom_decay_constant: needs n >= 2 (log n vanishes)");
  const Arc guard[] = {cons.J.at(k - 1)};
  const auto grid = outside(window_grid(G), guard);
  if (grid.empty()) throw ParameterError("atom_decay_constant: no grid point outside the guard arcs");
  const ArcFunction& w = cons.atom(k);
  const double scale = std::log(cons.N()) / std::log(static_cast<double>(cons.n()));
  return grid_max(grid, jobs, [&](Angle x) { return m_eval(w, x); }) * scale;
}

double pair_difference_constant(const ArcFunction& a, const ArcFunction& b, Angle anchor,
                                std::span<const Arc> excluded, int n, double N, std::size_t G,
                                int jobs) {
  const auto grid = outside(window_grid(G), excluded);
  if (grid.empty()) throw ParameterError("pair_difference_constant: no grid point outside the guard arcs");
  const double scale = static_cast<double>(n) * std::log(N);
  return grid_max(grid, jobs, [&](Angle x) {
    const double diff = std::fabs(khat_and_m(a, x).khat - khat_and_m(b, x).khat);
    return diff * scale * circle::chord(x, anchor);
  });
}

double pair_difference_constant(const Construction& cons, std::size_t k, std::size_t G, int jobs) {
  check_index(k, static_cast<std::size_t>(cons.n()), "pair_difference_constant");
  const Arc guards[] = {cons.J.at(2 * k - 1), cons.J.at(2 * k - 2)};
  return pair_difference_constant(cons.atom(2 * k), cons.atom(2 * k - 1), cons.direction(2 * k),
                                  guards, cons.n(), cons.N(), G, jobs);
}

DDelta d_delta(const Construction& cons) {
  const auto n = static_cast<std::size_t>(cons.n());
  DDelta out;
  out.delta.assign(n, 0.0);
  std::vector<double> Dk(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Angle x = cons.direction(2 * k);
    Dk[k - 1] = khat_and_m(cons.atom(2 * k), x).khat;
    long double acc = 0.0L;
    for (std::size_t i = 1; i <= 2 * n; ++i) {
      if (i == 2 * k) continue;
      acc += circle::atom_sign(i, cons.signs) * static_cast<long double>(khat_and_m(cons.atom(i), x).khat);
    }
    out.delta[k - 1] = static_cast<double>(acc);
  }
  out.D = Dk.front();
  for (double d : Dk) out.D_spread = std::max(out.D_spread, std::fabs(d - out.D));
  if (out.D_spread > 1e-8) {
    throw GeometryError("d_delta: K_{w_2k}(x_2k) depends on k (spread " +
                        std::to_string(out.D_spread) + "); atoms are not congruent");
  }
  if (out.D == 0.0) throw NumericError("d_delta: D vanishes");
  for (double d : out.delta) out.margin = std::max(out.margin, std::fabs(d) / std::fabs(out.D));
  return out;
}

KernelProfile profile(const Construction& cons, std::vector<Angle> grid, int jobs) {
  KernelProfile p;
  p.grid = std::move(grid);
  p.khat.resize(p.grid.size());
  p.m.resize(p.grid.size());
  parallel_for(p.grid.size(), jobs, [&](std::size_t i) {
    const KhatM v = khat_and_m(cons.omega, p.grid[i]);
    p.khat[i] = v.khat;
    p.m[i] = v.m;
  });
  const auto top = std::max_element(p.m.begin(), p.m.end());
  if (top != p.m.end()) {
    p.sup_m = *top;
    p.argmax_m = static_cast<std::size_t>(top - p.m.begin());
  }
  DDelta dd = d_delta(cons);
  p.D = dd.D;
  p.delta = std::move(dd.delta);
  p.margin = dd.margin;
  return p;
}

KernelProfile profile(const Construction& cons, std::size_t G, int jobs) {
  if (G < 64) throw ParameterError("profile: grid size must be >= 64");
  return profile(cons, circle_grid(G), jobs);
}

std::vector<double> khat_oscillation(const Construction& cons, std::size_t G) {
  if (G < 64) throw ParameterError("khat_oscillation: grid size must be >= 64");
  const auto n = static_cast<std::size_t>(cons.n());
  std::vector<double> out(n);
  const double step = circle::kTwoPi / static_cast<double>(G);
  for (std::size_t k = 1; k <= n; ++k) {
    const Angle x = cons.direction(2 * k);
    const double at = khat_and_m(cons.omega, x).khat;
    double osc = 0.0;
    for (double h : {-step, step}) {
      osc = std::max(osc, std::fabs(khat_and_m(cons.omega, x.rotated(h)).khat - at));
    }
    out[k - 1] = osc;
  }
  return out;
}

}  // namespace roughcert::logkernel
