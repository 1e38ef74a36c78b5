#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slopelab/rational.hpp"

namespace slopelab {

/// Polynomial over Q, coefficients low degree first.
using RationalPoly = std::vector<Rational>;

/// Parses expressions such as "T", "T^2-T+1" or "3*T^3 - 1/2" in the
/// variable T. Throws ParseError.
RationalPoly parse_polynomial(std::string_view text);
std::string polynomial_to_string(const RationalPoly& f);

/// f(T - c): translates roots by +c.
RationalPoly translate(const RationalPoly& f, const Rational& c);

/// p^-q * gamma^eps in the lexicographic group R x Z, or zero. gamma is an
/// infinitesimal just below 1, so eps < 0 means slightly smaller.
class ExtValue {
 public:
  static ExtValue zero() { return ExtValue(); }
  ExtValue(Rational q, long eps) : zero_(false), q_(std::move(q)), eps_(eps) {}

  bool is_zero() const noexcept { return zero_; }
  const Rational& exponent() const noexcept { return q_; }
  long infinitesimal() const noexcept { return eps_; }

  ExtValue operator*(const ExtValue& o) const;
  ExtValue pow(long n) const;

  friend bool operator==(const ExtValue&, const ExtValue&) = default;
  friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b);

  std::string to_string(long p) const;

 private:
  ExtValue() = default;
  bool zero_ = true;
  Rational q_ = 0;
  long eps_ = 0;
};

/// Points of the closed unit disk over Q_p: a classical point a, the disk
/// point of centre a and radius p^-s, or a rank-two point perturbing the
/// radius of a disk point infinitesimally down (minus) or up (plus).
class AdicDiskPoint {
 public:
  enum class Kind { Classical, Disk, RankTwo };
  enum class Perturbation { Minus, Plus };

  static AdicDiskPoint classical(long p, Rational center);
  static AdicDiskPoint disk(long p, Rational center, Rational s);
  static AdicDiskPoint gauss(long p) { return disk(p, 0, 0); }
  static AdicDiskPoint rank_two(long p, Rational center, Rational s, Perturbation dir);

  /// "classical:a", "disk:a:s" or "rank2:a:s:minus|plus".
  static AdicDiskPoint parse(long p, std::string_view text);

  long prime() const noexcept { return p_; }
  Kind kind() const noexcept { return kind_; }
  const Rational& center() const noexcept { return center_; }
  /// Radius exponent; zero for the Gauss point, unused for classical points.
  const Rational& radius_exponent() const noexcept { return s_; }
  Perturbation perturbation() const noexcept { return dir_; }

  AdicDiskPoint translated(const Rational& c) const;

  std::string to_string() const;

  /// Disk points are equal when their disks coincide, whatever the centres.
  friend bool operator==(const AdicDiskPoint& a, const AdicDiskPoint& b);

 private:
  AdicDiskPoint() = default;
  long p_ = 2;
  Kind kind_ = Kind::Classical;
  Rational center_ = 0;
  Rational s_ = 0;
  Perturbation dir_ = Perturbation::Minus;
};

/// |f|_x. Throws ZeroPolynomial for f = 0 and InvalidArgument when a
/// coefficient is not p-integral.
ExtValue eval_norm(const AdicDiskPoint& x, const RationalPoly& f);

/// A point of the affine line over F_p: a residue class or the generic point.
struct Specialization {
  bool generic;
  long residue;  // meaningful when !generic
  friend bool operator==(const Specialization&, const Specialization&) = default;
  std::string to_string() const;
};

Specialization specialize(const AdicDiskPoint& x);

AdicDiskPoint max_generalization(const AdicDiskPoint& x);

/// V(f mod p) intersected with the union of the D(g_j mod p). Without a
/// closed part the set is the union; without opens it is V(f) alone.
struct LocallyClosed {
  std::optional<RationalPoly> closed;
  std::vector<RationalPoly> opens;

  bool contains(const Specialization& s, long p) const;
};

enum class WitnessKind { NotApplicable, Finite, NoWitness };

struct TubeResult {
  bool in;
  WitnessKind witness_kind;
  long witness;  // smallest N with |f(x)|^N <= |p|, when Finite
};

/// Membership of x in the tube ]Z[ = sp^-1(Z). Decided through sp and
/// cross-checked against the norm description; for points of the closed
/// part the openness witness is attached.
TubeResult tube_membership(const AdicDiskPoint& x, const LocallyClosed& z);

/// sp_max^-1(Z): the tube membership of the maximal generalization.
bool spmax_preimage_membership(const AdicDiskPoint& x, const LocallyClosed& z);

/// Smallest N >= 1 with v^N <= |p|, if any.
std::optional<long> openness_witness(const ExtValue& v);

}  // namespace slopelab
