#pragma once

#include <cstddef>
#include <vector>

#include "slopelab/isocrystal.hpp"
#include "slopelab/np_calculus.hpp"

namespace slopelab {

struct GradedPiece {
  long rank;
  Rational slope;
};
using GradedPieces = std::vector<GradedPiece>;

/// Polygon of the multiset with each slope repeated rank times. With
/// `harder_narasimhan` set the slopes must strictly decrease.
NewtonPolygon hn_polygon(const GradedPieces& pieces, bool harder_narasimhan = false);

/// Increasing chain of coordinate subobjects M_1 < M_2 < ... < M, each given
/// by its (0-based) coordinate indices. The last one is the whole space.
using CoordinateFiltration = std::vector<std::vector<std::size_t>>;

/// Slopes v(A_ii) of the eigenlines of a diagonal phi. Throws NotDiagonal.
std::vector<Rational> diagonal_slopes(const Isocrystal& m);

/// Graded pieces M_j / M_{j-1}; the slope of a piece is degree over rank.
GradedPieces filtration_pieces(const Isocrystal& m, const CoordinateFiltration& f);

/// True iff the polygon of the filtration lies on or above NP(M).
bool filtration_dominance_check(const Isocrystal& m, const CoordinateFiltration& f);

/// Every chain of coordinate subobjects of a rank-n space, i.e. every
/// ordered set partition of {0..n-1} read cumulatively.
std::vector<CoordinateFiltration> all_coordinate_filtrations(std::size_t n);

/// B(GL_r, mu): multisets nu of size r with the total of mu, nu on or above
/// mu, and integral breakpoints. Sorted lexicographically by partial sums,
/// so mu comes first. Throws SizeMismatch unless mu has r entries.
std::vector<SlopeMultiset> kottwitz_set(std::size_t r, const std::vector<long>& mu);

/// t_H of the filtration induced on the span of the given coordinates. A
/// weight i counts dim Fil^i - dim Fil^(i+1) times, so a step covering an
/// index range jumps at its largest index.
long hodge_number(const FilteredModule& f, const std::vector<std::size_t>& coords);

/// Fontaine's criterion for a filtered (phi, N)-module with diagonal phi:
/// t_N(D) = t_H(D) and t_N(D') >= t_H(D') for every (phi, N)-stable D'.
/// The endpoint condition is tested first and settles any module failing
/// it. Past that the answer is decided when phi is diagonal and either the
/// slopes are pairwise distinct or the filtration has a single weight;
/// other inputs raise NotSplit.
bool weakly_admissible_split(const FilteredModule& f);

}  // namespace slopelab
