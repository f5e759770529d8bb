#pragma once

#include <optional>
#include <vector>

#include "roughcert/circle.hpp"
#include "roughcert/orlicz.hpp"

namespace roughcert::circle {

/// One instance of the counterexample: 2n atoms w_k on arcs I_k of length
/// 1/N, centered a quarter turn clockwise of the directions x_k, and
///
///   Omega_n = sum_k (-1)^k eps_{ceil(k/2)} w_k.
struct Construction {
  orlicz::ScheduleParams params;
  DirectionFamily dirs;
  std::vector<Arc> I;  // support arcs, 2n
  std::vector<Arc> J;  // guard arcs of length 1/(100n) around each direction
  double c = 0.0;      // common atom height
  SignSequence signs;
  std::vector<ArcFunction> atoms;
  ArcFunction omega;

  int n() const noexcept { return params.n; }
  double N() const noexcept { return params.N; }
  /// Direction of x_k, 1-based.
  Angle direction(std::size_t k) const { return dirs.angles.at(k - 1); }
  const ArcFunction& atom(std::size_t k) const { return atoms.at(k - 1); }
};

/// Signs default to the Rudin-Shapiro sequence of length n. Throws
/// ValidationError when 1/N is not below a quarter of the smallest gap
/// between consecutive directions.
Construction build_construction(const orlicz::ScheduleParams& params, GeometrySpec geometry = {},
                                std::optional<SignSequence> signs = std::nullopt);

}  // namespace roughcert::circle
