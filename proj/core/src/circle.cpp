#include "roughcert/circle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "roughcert/error.hpp"

namespace roughcert::circle {

namespace {

int wrap_quarter(long long q) {
  auto r = static_cast<int>(q % 4);
  return r < 0 ? r + 4 : r;
}

Angle from_parts(long long q, long double offset) {
  const long double k = std::floor(offset / kHalfPiL);
  offset -= k * kHalfPiL;
  q += static_cast<long long>(k);
  auto o = static_cast<double>(offset);
  // Rounding to double may land on or past pi/2.
  while (static_cast<long double>(o) >= kHalfPiL) {
    o = static_cast<double>(static_cast<long double>(o) - kHalfPiL);
    ++q;
  }
  if (o < 0.0) o = 0.0;
  return Angle::quarters(wrap_quarter(q), o);
}

}  // namespace

Angle Angle::radians(double x) {
  if (!std::isfinite(x)) throw DomainError("angle must be finite");
  return from_parts(0, static_cast<long double>(x));
}

Angle Angle::quarters(int q, double offset) {
  if (!std::isfinite(offset)) throw DomainError("angle offset must be finite");
  if (offset >= 0.0 && static_cast<long double>(offset) < kHalfPiL) {
    Angle a;
    a.quarter_ = wrap_quarter(q);
    a.offset_ = offset;
    return a;
  }
  return from_parts(q, static_cast<long double>(offset));
}

double Angle::value() const noexcept {
  const auto v = static_cast<double>(quarter_ * kHalfPiL + offset_);
  return v < kTwoPi ? v : std::nextafter(kTwoPi, 0.0);
}

Angle Angle::rotated_quarters(int k) const noexcept {
  Angle a = *this;
  a.quarter_ = wrap_quarter(static_cast<long long>(quarter_) + k);
  return a;
}

Angle Angle::rotated(Angle alpha) const {
  return from_parts(static_cast<long long>(quarter_) + alpha.quarter_,
                    static_cast<long double>(offset_) + alpha.offset_);
}

Displacement displacement(Angle a, Angle b) {
  int q = a.quarter() - b.quarter();
  long double r = static_cast<long double>(a.offset()) - b.offset();
  const long double eighth = 0.5L * kHalfPiL;
  if (r > eighth) {
    r -= kHalfPiL;
    ++q;
  } else if (r < -eighth) {
    r += kHalfPiL;
    --q;
  }
  return {wrap_quarter(q), r};
}

long double signed_difference(Angle a, Angle b) {
  const auto [q, r] = displacement(a, b);
  switch (q) {
    case 0:
      return r;
    case 1:
      return kHalfPiL + r;
    case 2:
      return r <= 0.0L ? kPiL + r : r - kPiL;
    default:
      return r - kHalfPiL;
  }
}

double chord(Angle a, Angle b) {
  return static_cast<double>(2.0L * std::fabs(std::sin(0.5L * signed_difference(a, b))));
}

bool Arc::contains(Angle theta) const {
  const long double d = signed_difference(theta, center);
  const long double h = 0.5L * length;
  return d >= -h && d < h;
}

Arc make_arc(Angle center, double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError("arc length must be positive and finite");
  }
  if (length > kHalfPi + 1e-15) {
    throw ValidationError("arc length must not exceed pi/2");
  }
  return {center, length};
}

Arc rotate_arc(const Arc& a, Angle alpha) { return {a.center.rotated(alpha), a.length}; }

bool arcs_overlap(const Arc& a, const Arc& b) {
  const long double d = std::fabs(signed_difference(a.center, b.center));
  return d < 0.5L * a.length + 0.5L * b.length - kDisjointSlack;
}

ArcFunction::ArcFunction(std::vector<Piece> pieces) {
  std::erase_if(pieces, [](const Piece& p) { return p.coeff == 0.0; });
  for (const auto& p : pieces) {
    if (!std::isfinite(p.coeff)) throw ValidationError("arc coefficient must be finite");
    make_arc(p.arc.center, p.arc.length);
  }
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& x, const Piece& y) { return x.arc.center < y.arc.center; });
  const std::size_t m = pieces.size();
  if (m >= 2) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i + 1) % m;
      if (m == 2 && i == 1) break;
      if (arcs_overlap(pieces[i].arc, pieces[j].arc)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "arcs overlap: centers " << pieces[i].arc.center.value() << " and "
            << pieces[j].arc.center.value();
        throw ValidationError(msg.str());
      }
    }
  }
  pieces_ = std::move(pieces);
}

ArcFunction ArcFunction::scaled(double k) const {
  std::vector<Piece> out(pieces_.begin(), pieces_.end());
  for (auto& p : out) p.coeff *= k;
  return ArcFunction(std::move(out));
}

ArcFunction disjoint_sum(std::span<const ArcFunction> parts, std::span<const double> weights) {
  if (parts.size() != weights.size()) {
    throw ValidationError("disjoint_sum: parts and weights differ in length");
  }
  std::vector<Piece> all;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& p : parts[i].pieces()) all.push_back({p.arc, p.coeff * weights[i]});
  }
  return ArcFunction(std::move(all));
}

double evaluate(const ArcFunction& f, Angle theta) {
  const auto pieces = f.pieces();
  if (pieces.empty()) return 0.0;
  const auto it = std::upper_bound(
      pieces.begin(), pieces.end(), theta,
      [](const Angle& t, const Piece& p) { return t < p.arc.center; });
  const auto idx = static_cast<std::size_t>(it - pieces.begin());
  const std::size_t m = pieces.size();
  const std::size_t before = idx == 0 ? m - 1 : idx - 1;
  const std::size_t after = idx == m ? 0 : idx;
  if (pieces[before].arc.contains(theta)) return pieces[before].coeff;
  if (pieces[after].arc.contains(theta)) return pieces[after].coeff;
  return 0.0;
}

double integral(const ArcFunction& f) {
  long double s = 0.0L;
  for (const auto& p : f.pieces()) s += static_cast<long double>(p.coeff) * p.arc.length;
  return static_cast<double>(s);
}

double support_measure(const ArcFunction& f) {
  long double s = 0.0L;
  for (const auto& p : f.pieces()) s += p.arc.length;
  return static_cast<double>(s);
}

double max_abs_coeff(const ArcFunction& f) {
  double m = 0.0;
  for (const auto& p : f.pieces()) m = std::max(m, std::fabs(p.coeff));
  return m;
}

bool is_even(const ArcFunction& f, std::size_t samples) {
  auto antipodal_equal = [&](Angle t) { return evaluate(f, t) == evaluate(f, t.rotated_quarters(2)); };
  for (std::size_t j = 0; j < samples; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
    if (!antipodal_equal(Angle::radians(x))) return false;
  }
  for (const auto& p : f.pieces()) {
    if (!antipodal_equal(p.arc.center)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

Angle direction_angle(long long t, long long s) {
  // x = (-t, s) lies at pi/2 + atan(t / s).
  return Angle::quarters(1, std::atan2(static_cast<double>(t), static_cast<double>(s)));
}

// Keeps the automatically placed directions away from the window edges.
constexpr double kAutoInset = 0.02;

}  // namespace

void validate_directions(const DirectionFamily& dirs, int n) {
  auto fail = [](const std::string& what) { throw ValidationError("direction family: " + what); };
  if (n < 1) fail("n must be >= 1");
  const auto count = static_cast<std::size_t>(2 * n);
  if (dirs.angles.size() != count) fail("expected 2n directions");
  if (dirs.s <= 0) fail("s must be a positive integer");
  if (dirs.t_start <= 0) fail("t_start must be a positive integer");
  if (dirs.t_step <= 0) fail("t_step must be a positive integer");
  for (std::size_t k = 1; k <= count; ++k) {
    const Angle expected = direction_angle(dirs.t(k), dirs.s);
    if (!(dirs.angles[k - 1] == expected)) fail("angles do not match x_k = (-t_k, s)");
    const double v = expected.value();
    if (!(v > kWindowLo && v < kWindowHi)) {
      std::ostringstream msg;
      msg << "direction " << k << " at " << v << " rad leaves the window (pi/2 + pi/32, 3pi/4 - pi/32)";
      fail(msg.str());
    }
  }
  const double lo = 1.0 / (32.0 * n);
  const double hi = 4.0 / n;
  for (std::size_t k = 1; k < count; ++k) {
    const double g = chord(dirs.angles[k], dirs.angles[k - 1]);
    if (g < lo || g > hi) {
      std::ostringstream msg;
      msg << "gap between directions " << k << " and " << k + 1 << " is " << g
          << ", outside [1/(32n), 4/n] = [" << lo << ", " << hi << "]";
      fail(msg.str());
    }
  }
}

DirectionFamily build_directions(int n, GeometrySpec geometry) {
  if (n < 1) throw ValidationError("direction family: n must be >= 1");
  if (geometry.s < 0 || geometry.t_start < 0 || geometry.t_step < 0) {
    throw ValidationError("direction family: geometry entries must be positive");
  }
  const auto count = static_cast<std::size_t>(2 * n);
  const double tan_lo = std::tan(kWindowLo - kHalfPi + kAutoInset);
  const double tan_hi = std::tan(kWindowHi - kHalfPi - kAutoInset);

  auto make = [&](long long s, long long t0, long long dt) {
    DirectionFamily d{s, t0, dt, {}};
    d.angles.reserve(count);
    for (std::size_t k = 1; k <= count; ++k) d.angles.push_back(direction_angle(d.t(k), s));
    return d;
  };
  auto fill = [&](long long s) -> DirectionFamily {
    const long long t0 = geometry.t_start ? geometry.t_start
                                          : static_cast<long long>(std::ceil(s * tan_lo));
    long long dt = geometry.t_step;
    if (dt == 0) {
      const auto t_end = static_cast<long long>(std::floor(s * tan_hi));
      dt = count > 1 ? (t_end - t0) / static_cast<long long>(count - 1) : 1;
    }
    if (dt < 1) throw ValidationError("direction family: no room for 2n directions at s = " + std::to_string(s));
    return make(s, t0, dt);
  };

  if (geometry.s != 0) {
    DirectionFamily d = fill(geometry.s);
    validate_directions(d, n);
    return d;
  }
  std::string last_error;
  for (int j = 20; j <= 52; j += 4) {
    try {
      DirectionFamily d = fill(1LL << j);
      validate_directions(d, n);
      return d;
    } catch (const ValidationError& e) {
      last_error = e.what();
    }
  }
  throw ValidationError("direction family: automatic geometry search failed: " + last_error);
}

ArcFunction make_w(const Arc& I, double c) {
  if (!(I.length < kPi / 8.0)) throw DomainError("make_w: arc length must be below pi/8");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("make_w: height must be positive");
  std::vector<Piece> pieces;
  pieces.reserve(4);
  for (int j = 0; j < 4; ++j) {
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;
    pieces.push_back({rotate_arc(I, Angle::quarters(j)), sign * c});
  }
  return ArcFunction(std::move(pieces));
}

int atom_sign(std::size_t k, const SignSequence& signs) {
  const int parity = (k % 2 == 0) ? 1 : -1;
  return parity * signs[(k + 1) / 2];
}

ArcFunction assemble_omega(std::span<const ArcFunction> atoms, const SignSequence& signs) {
  if (atoms.size() != 2 * signs.size()) {
    throw ValidationError("assemble_omega: need 2n atoms for n signs");
  }
  for (int e : signs.eps) {
    if (e != 1 && e != -1) throw ValidationError("assemble_omega: signs must be +-1");
  }
  std::vector<double> weights(atoms.size());
  for (std::size_t k = 1; k <= atoms.size(); ++k) weights[k - 1] = atom_sign(k, signs);
  return disjoint_sum(atoms, weights);
}

}  // namespace roughcert::circle
