#pragma once

// Angles, arcs and piecewise-constant functions on the unit circle.
//
// An Angle is stored as a whole number of quarter turns plus an offset in
// [0, pi/2). Rotations by multiples of pi/2 only touch the quarter count, so
// they are exact; differences between angles that share an offset (a
// direction and the arcs built from it) are exactly zero. The kernel
// integrals rely on this when arcs are as short as 2^-64.

#include <compare>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace roughcert::circle {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;
inline constexpr long double kPiL = std::numbers::pi_v<long double>;
inline constexpr long double kHalfPiL = 0.5L * std::numbers::pi_v<long double>;

/// Slack allowed when testing arcs for disjointness, in radians.
inline constexpr double kDisjointSlack = 1e-15;

class Angle {
 public:
  constexpr Angle() = default;

  /// Reduces x modulo 2*pi.
  static Angle radians(double x);
  /// q quarter turns plus offset; the offset may lie outside [0, pi/2).
  static Angle quarters(int q, double offset = 0.0);

  int quarter() const noexcept { return quarter_; }
  double offset() const noexcept { return offset_; }

  /// Canonical value in [0, 2*pi).
  double value() const noexcept;

  Angle rotated_quarters(int k) const noexcept;
  Angle rotated(Angle alpha) const;
  Angle rotated(double alpha) const { return rotated(radians(alpha)); }

  friend bool operator==(const Angle&, const Angle&) = default;
  friend auto operator<=>(const Angle&, const Angle&) = default;

 private:
  int quarter_ = 0;       // 0..3
  double offset_ = 0.0;   // [0, pi/2)
};

/// The displacement a - b written as q*pi/2 + r with r in [-pi/4, pi/4].
/// Only q mod 4 is kept.
struct Displacement {
  int quarter = 0;
  long double rest = 0.0L;
};

Displacement displacement(Angle a, Angle b);

/// a - b reduced to (-pi, pi].
long double signed_difference(Angle a, Angle b);

/// Chord length |e^{ia} - e^{ib}|.
double chord(Angle a, Angle b);

struct Arc {
  Angle center;
  double length = 0.0;

  double half_length() const noexcept { return 0.5 * length; }
  bool contains(Angle theta) const;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Validates 0 < length <= pi/2.
Arc make_arc(Angle center, double length);

Arc rotate_arc(const Arc& a, Angle alpha);

/// True when the two closed arcs overlap by more than kDisjointSlack.
bool arcs_overlap(const Arc& a, const Arc& b);

struct Piece {
  Arc arc;
  double coeff = 0.0;
};

/// A finite combination of characteristic functions of disjoint arcs.
///
/// Pieces are kept sorted by arc center; zero coefficients are dropped.
/// Construction throws ValidationError when two arcs overlap.
class ArcFunction {
 public:
  ArcFunction() = default;
  explicit ArcFunction(std::vector<Piece> pieces);

  std::span<const Piece> pieces() const noexcept { return pieces_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  bool empty() const noexcept { return pieces_.empty(); }

  ArcFunction scaled(double k) const;

 private:
  std::vector<Piece> pieces_;
};

/// Sum of functions with pairwise disjoint supports.
ArcFunction disjoint_sum(std::span<const ArcFunction> parts,
                         std::span<const double> weights);

double evaluate(const ArcFunction& f, Angle theta);
/// Exact sum of coeff * length.
double integral(const ArcFunction& f);
/// Total length of the support.
double support_measure(const ArcFunction& f);
double max_abs_coeff(const ArcFunction& f);

/// f(theta) == f(theta + pi) on `samples` uniform points and on every piece
/// center (the uniform grid alone almost never lands on a short arc).
bool is_even(const ArcFunction& f, std::size_t samples);

// ---------------------------------------------------------------------------
// Directions x_k = (-t_k, s) and the atoms built on them.

struct GeometrySpec {
  // Zero means "choose automatically".
  long long s = 0;
  long long t_start = 0;
  long long t_step = 0;
};

struct DirectionFamily {
  long long s = 0;
  long long t_start = 0;
  long long t_step = 0;
  std::vector<Angle> angles;  // 2n directions of x_k

  std::size_t count() const noexcept { return angles.size(); }
  long long t(std::size_t k) const {  // 1-based, like the construction
    return t_start + static_cast<long long>(k - 1) * t_step;
  }
};

/// Angular window holding every direction: (pi/2 + pi/32, 3pi/4 - pi/32).
inline constexpr double kWindowLo = kHalfPi + kPi / 32.0;
inline constexpr double kWindowHi = 0.75 * kPi - kPi / 32.0;

/// 2n directions in arithmetic progression. Missing geometry fields are
/// filled in automatically; throws ValidationError naming the violated
/// invariant when the requested geometry is infeasible.
DirectionFamily build_directions(int n, GeometrySpec geometry = {});

/// Checks every DirectionFamily invariant for a family of 2n directions.
void validate_directions(const DirectionFamily& dirs, int n);

struct SignSequence {
  std::vector<int> eps;

  std::size_t size() const noexcept { return eps.size(); }
  /// 1-based access.
  int operator[](std::size_t k) const { return eps.at(k - 1); }
};

/// c * (-chi_I + chi_{R I} - chi_{R^2 I} + chi_{R^3 I}), R the quarter turn.
ArcFunction make_w(const Arc& I, double c);

/// Omega_n = sum_{k=1}^{2n} (-1)^k eps_{ceil(k/2)} w_k.
ArcFunction assemble_omega(std::span<const ArcFunction> atoms,
                           const SignSequence& signs);

/// Global sign carried by atom k (1-based) inside Omega_n.
int atom_sign(std::size_t k, const SignSequence& signs);

}  // namespace roughcert::circle
