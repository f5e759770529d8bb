#include "roughcert/construction.hpp"

#include <cmath>
#include <limits>

#include "roughcert/error.hpp"
#include "roughcert/logkernel.hpp"
#include "roughcert/trignorms.hpp"

namespace roughcert::circle {

Construction build_construction(const orlicz::ScheduleParams& params, GeometrySpec geometry,
                                std::optional<SignSequence> signs) {
  const int n = params.n;
  const double N = params.N;
  if (n < 1) throw ValidationError("construction: n must be >= 1");
  if (!(N > 0.0) || !std::isfinite(N)) throw ValidationError("construction: N must be positive");

  Construction cons;
  cons.params = params;
  cons.dirs = build_directions(n, geometry);

  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < cons.dirs.count(); ++k) {
    min_gap = std::min(min_gap, chord(cons.dirs.angles[k], cons.dirs.angles[k - 1]));
  }
  const double len = 1.0 / N;
  if (!(len < min_gap / 4.0)) {
    throw ValidationError("construction: arc length 1/N must be below a quarter of the minimum direction gap");
  }
  if (!(len < kPi / 8.0)) throw ValidationError("construction: N too small for atoms");

  cons.signs = signs ? std::move(*signs) : trignorms::rudin_shapiro(n);
  if (cons.signs.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("construction: need exactly n signs");
  }

  const std::size_t count = cons.dirs.count();
  cons.I.reserve(count);
  cons.J.reserve(count);
  for (const Angle& theta : cons.dirs.angles) {
    cons.I.push_back(make_arc(theta.rotated_quarters(-1), len));
    cons.J.push_back(make_arc(theta, 1.0 / (100.0 * n)));
  }
  cons.c = logkernel::solve_c(cons.I.front(), cons.dirs.angles.front());
  cons.atoms.reserve(count);
  for (const Arc& arc : cons.I) cons.atoms.push_back(make_w(arc, cons.c));
  cons.omega = assemble_omega(cons.atoms, cons.signs);
  return cons;
}

}  // namespace roughcert::circle
