#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "slopelab/adic_disk.hpp"
#include "slopelab/finite_field.hpp"
#include "slopelab/np_calculus.hpp"

namespace slopelab {

enum class LegendreRegionLabel { GoodOrdinary, GoodSupersingular, PotentiallyMultiplicative };

std::string_view to_string(LegendreRegionLabel label);

/// NP of the family at a point of the region: the negated Frobenius slopes
/// of the reduction, {-1,0} or {-1/2,-1/2}.
SlopeMultiset region_slopes(LegendreRegionLabel label);

/// Deuring polynomial sum_{i<=m} C(m,i)^2 t^i mod p, m = (p-1)/2, low
/// degree first.
std::vector<long> deuring_polynomial(long p);

/// Supersingular parameters of y^2 = x(x-1)(x-lambda) as elements of F_{p^2}.
struct SupersingularSet {
  FiniteField field;  // F_{p^2}
  std::vector<FiniteField::Elem> roots;  // sorted by index

  bool contains(FiniteField::Elem a) const;
  /// The members lying in F_p, as integers 0..p-1.
  std::vector<long> rational_members() const;
};

/// Roots of the Deuring polynomial in F_{p^2}. Throws EvenPrime for p = 2.
SupersingularSet supersingular_lambdas(long p);

/// Number of points of E_lambda over the field, including infinity. Throws
/// SingularCurve for lambda in {0, 1}.
long count_points(const FiniteField& f, FiniteField::Elem lambda);
long frobenius_trace(const FiniteField& f, FiniteField::Elem lambda);

/// A point of the analytic line minus {0, 1}. The chart flag selects the
/// coordinate 1/lambda, which covers the region |lambda| >= 1 including
/// the disk around infinity.
struct LegendrePoint {
  AdicDiskPoint point;
  bool inverse_chart = false;

  /// Point descriptors of the adic disk, optionally prefixed by "inv:".
  static LegendrePoint parse(long p, std::string_view text);
  std::string to_string() const;
};

/// Throws ExcludedPoint for the classical points 0, 1 and infinity.
LegendreRegionLabel classify_point(const LegendrePoint& x, const SupersingularSet& ss);

/// For every residue c: the classical point c + p, the residue disk
/// disk:c:1, the Gauss point written disk:c:0 and the boundary point
/// rank2:c:0:minus; then the disk around infinity and the point 1/p.
std::vector<LegendrePoint> default_grid(long p);

/// Descriptors one per line; blank lines and lines starting with # skipped.
std::vector<LegendrePoint> read_grid(long p, std::istream& in);

struct PartitionRow {
  std::string point;
  LegendreRegionLabel label;
  SlopeMultiset slopes;
};

std::vector<PartitionRow> emit_partition(long p, const std::vector<LegendrePoint>& grid, int jobs = 1);

/// CSV with header point,label,slopes.
void write_csv(const std::vector<PartitionRow>& rows, std::ostream& out);

/// Schematic picture: residue disks drawn inside the good reduction
/// ellipse, coloured by label.
void write_svg(long p, const std::vector<PartitionRow>& rows, std::ostream& out);

/// Rows that are residue disks (radius below 1, lambda chart) with the
/// supersingular label.
long count_supersingular_disks(long p, const std::vector<PartitionRow>& rows);

}  // namespace slopelab
