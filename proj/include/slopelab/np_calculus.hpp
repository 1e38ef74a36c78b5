#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slopelab/rational.hpp"

namespace slopelab {

/// Sorted multiset of rational slopes. Immutable after construction.
class SlopeMultiset {
 public:
  SlopeMultiset() = default;
  explicit SlopeMultiset(std::vector<Rational> slopes);

  /// Parses a comma separated list such as "-1/2,-1/2" or "0,1".
  static SlopeMultiset parse(std::string_view text);

  const std::vector<Rational>& slopes() const noexcept { return slopes_; }
  std::size_t size() const noexcept { return slopes_.size(); }
  bool empty() const noexcept { return slopes_.empty(); }
  Rational total() const;

  /// Partial sums of the ascending slopes; entry k is the sum of the first k+1.
  std::vector<Rational> partial_sums() const;

  std::string to_string() const;

  friend bool operator==(const SlopeMultiset&, const SlopeMultiset&) = default;

 private:
  std::vector<Rational> slopes_;
};

struct PolygonVertex {
  Rational t;
  Rational v;
  friend bool operator==(const PolygonVertex&, const PolygonVertex&) = default;
};

/// Convex piecewise-linear function on [0, length] through (0, 0), stored by
/// its breakpoints with collinear interior points removed.
class NewtonPolygon {
 public:
  /// Normalizes and validates: first vertex (0,0), strictly increasing
  /// abscissae, strictly increasing segment slopes.
  explicit NewtonPolygon(std::vector<PolygonVertex> vertices);

  const std::vector<PolygonVertex>& breakpoints() const noexcept { return vertices_; }
  const Rational& length() const { return vertices_.back().t; }
  const Rational& end_value() const { return vertices_.back().v; }

  /// Value at t in [0, length].
  Rational operator()(const Rational& t) const;

  /// Slope multiset; requires integral breakpoints.
  SlopeMultiset slopes() const;

  /// Pointwise multiple a * f for a > 0.
  NewtonPolygon scaled(const Rational& a) const;

  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

 private:
  std::vector<PolygonVertex> vertices_;
};

enum class OrderResult { DominatesOrEqual, DominatedOrEqual, Equal, Incomparable, DifferentFrame };

std::string_view to_string(OrderResult r);

NewtonPolygon np_from_multiset(const SlopeMultiset& m);

/// Compares ascending partial sums. DominatesOrEqual means `a` lies on or
/// above `b` (and not equal).
OrderResult dominance(const SlopeMultiset& a, const SlopeMultiset& b);

/// True when `a` dominates or equals `b`.
inline bool dominates_or_equal(const SlopeMultiset& a, const SlopeMultiset& b) {
  auto r = dominance(a, b);
  return r == OrderResult::DominatesOrEqual || r == OrderResult::Equal;
}

SlopeMultiset scale(const Rational& a, const SlopeMultiset& m);
SlopeMultiset negate(const SlopeMultiset& m);

/// f ⪯ g on Conv([0,h]): equal endpoints and f <= g everywhere.
/// Throws IntervalMismatch when the domains differ.
bool conv_preceq(const NewtonPolygon& f, const NewtonPolygon& g);

}  // namespace slopelab
