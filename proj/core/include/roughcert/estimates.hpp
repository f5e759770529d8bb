#pragma once

// Quantitative estimates on a Construction: single-atom decay away from the
// guard arcs, cancellation between paired atoms, the signal / cross-talk split
// K(x_{2k}) = D eps_k + delta_k, and sampled kernel profiles.

#include <cstddef>
#include <span>
#include <vector>

#include "roughcert/construction.hpp"

namespace roughcert::logkernel {

/// Midpoints of G equal cells of the window (pi/2, 3pi/4).
std::vector<circle::Angle> window_grid(std::size_t G);
/// 2 pi j / G, j = 0..G-1 (quarter points exact when 4 divides G).
std::vector<circle::Angle> circle_grid(std::size_t G);

/// True when theta lies in one of the four quarter rotations of arc a.
bool in_rotations(const circle::Arc& a, circle::Angle theta);

/// max of m(w_k)(x) * log N / log n over window points outside the rotations
/// of J_k. Needs n >= 2; throws ParameterError when no grid point is left.
double atom_decay_constant(const circle::Construction& cons, std::size_t k, std::size_t G,
                           int jobs = 1);

/// max of |K_{w_{2k}}(x) - K_{w_{2k-1}}(x)| * n * log N * |e^{ix} - e^{i theta_{2k}}|
/// over window points outside the rotations of J_{2k} and J_{2k-1}.
double pair_difference_constant(const circle::Construction& cons, std::size_t k, std::size_t G,
                                int jobs = 1);

/// The same maximum for arbitrary atoms a, b, anchored at `anchor`, with the
/// rotations of every arc in `excluded` removed from the grid.
double pair_difference_constant(const circle::ArcFunction& a, const circle::ArcFunction& b,
                                circle::Angle anchor, std::span<const circle::Arc> excluded,
                                int n, double N, std::size_t G, int jobs = 1);

struct DDelta {
  double D = 0.0;
  std::vector<double> delta;  // delta_1..delta_n
  double margin = 0.0;        // max |delta_k| / |D|
  double D_spread = 0.0;      // max_k |K_{w_{2k}}(theta_{2k}) - D|
};

/// Throws GeometryError when K_{w_{2k}}(theta_{2k}) depends on k by more
/// than 1e-8.
DDelta d_delta(const circle::Construction& cons);

struct KernelProfile {
  std::vector<circle::Angle> grid;
  std::vector<double> khat;
  std::vector<double> m;
  double D = 0.0;
  std::vector<double> delta;
  double margin = 0.0;
  double sup_m = 0.0;  // grid maximum of m(Omega), a lower estimate of the sup
  std::size_t argmax_m = 0;
};

/// K and m of Omega_n on the full-circle grid of size G >= 64.
KernelProfile profile(const circle::Construction& cons, std::size_t G, int jobs = 1);
/// Same on an arbitrary grid (D and delta are filled in as well).
KernelProfile profile(const circle::Construction& cons, std::vector<circle::Angle> grid,
                      int jobs = 1);

/// For each k, max |K_Omega(theta_{2k} +- h) - K_Omega(theta_{2k})| with
/// h = 2 pi / G, i.e. on a grid of spacing h centered at theta_{2k}. A grid
/// anchored at 0 would share sample points between G and 4G.
std::vector<double> khat_oscillation(const circle::Construction& cons, std::size_t G);

}  // namespace roughcert::logkernel
