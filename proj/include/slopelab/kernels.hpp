#pragma once

// Data-parallel sweeps. Each kernel has a serial reference and an OpenMP
// version with identical, deterministic results.

#include <cstddef>
#include <vector>

#include "slopelab/finite_field.hpp"
#include "slopelab/legendre.hpp"

namespace slopelab::kernels {

struct SweepStats {
  long isocrystals = 0;
  long filtrations = 0;
  long failures = 0;
  friend bool operator==(const SweepStats&, const SweepStats&) = default;
};

/// Every tuple of distinct entries of `pool` with 1..max_rank entries.
std::vector<std::vector<long>> distinct_slope_tuples(std::size_t max_rank, const std::vector<long>& pool);

namespace serial {

/// a_q(lambda) for every lambda in the field (by index); 0 at lambda = 0, 1.
std::vector<long> frobenius_traces(const FiniteField& f);
/// Parameters whose trace vanishes mod p, sorted.
std::vector<FiniteField::Elem> supersingular_by_count(const FiniteField& f);
/// Diagonal isocrystals over Q_p with the given slope tuples, each against
/// every coordinate filtration.
SweepStats hn_dominance_sweep(const std::vector<std::vector<long>>& tuples, long p);
std::vector<LegendreRegionLabel> classify_all(const std::vector<LegendrePoint>& points, const SupersingularSet& ss);

}  // namespace serial

namespace omp {

std::vector<long> frobenius_traces(const FiniteField& f, int jobs);
std::vector<FiniteField::Elem> supersingular_by_count(const FiniteField& f, int jobs);
SweepStats hn_dominance_sweep(const std::vector<std::vector<long>>& tuples, long p, int jobs);
std::vector<LegendreRegionLabel> classify_all(const std::vector<LegendrePoint>& points, const SupersingularSet& ss, int jobs);

}  // namespace omp

}  // namespace slopelab::kernels
