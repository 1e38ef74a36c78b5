#include <omp.h>

#include <exception>

#include "slopelab/hn_kottwitz.hpp"
#include "slopelab/kernels.hpp"

namespace slopelab::kernels::omp {

namespace {

// Exceptions may not cross the parallel region; keep the first by index.
class FirstError {
 public:
  void record(long index, std::exception_ptr e) {
#pragma omp critical(slopelab_first_error)
    {
      if (!error_ || index < index_) {
        error_ = e;
        index_ = index;
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  long index_ = 0;
};

}  // namespace

std::vector<long> frobenius_traces(const FiniteField& f, int jobs) {
  const long q = f.order();
  std::vector<long> out(static_cast<std::size_t>(q), 0);
#pragma omp parallel for num_threads(jobs) schedule(static)
  for (long l = 2; l < q; ++l) out[static_cast<std::size_t>(l)] = frobenius_trace(f, static_cast<FiniteField::Elem>(l));
  return out;
}

std::vector<FiniteField::Elem> supersingular_by_count(const FiniteField& f, int jobs) {
  auto traces = frobenius_traces(f, jobs);
  std::vector<FiniteField::Elem> out;
  for (long l = 2; l < f.order(); ++l)
    if (traces[static_cast<std::size_t>(l)] % f.characteristic() == 0) out.push_back(static_cast<FiniteField::Elem>(l));
  return out;
}

SweepStats hn_dominance_sweep(const std::vector<std::vector<long>>& tuples, long p, int jobs) {
  std::size_t max_rank = 0;
  for (const auto& t : tuples) max_rank = std::max(max_rank, t.size());
  std::vector<std::vector<CoordinateFiltration>> by_rank;
  for (std::size_t r = 0; r <= max_rank; ++r) by_rank.push_back(all_coordinate_filtrations(r));

  const long n = static_cast<long>(tuples.size());
  long filtrations = 0, failures = 0;
  FirstError error;
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 8) reduction(+ : filtrations, failures)
  for (long i = 0; i < n; ++i) {
    try {
      const auto& t = tuples[static_cast<std::size_t>(i)];
      auto ctx = UnramifiedContext::make(p, 1);
      std::vector<UnramifiedElement> d;
      for (long e : t) d.push_back(UnramifiedElement::power_of_p(ctx, e));
      Isocrystal m(Matrix::diagonal(d));
      for (const auto& f : by_rank[t.size()]) {
        ++filtrations;
        if (!filtration_dominance_check(m, f)) ++failures;
      }
    } catch (...) {
      error.record(i, std::current_exception());
    }
  }
  error.rethrow();
  return {n, filtrations, failures};
}

std::vector<LegendreRegionLabel> classify_all(const std::vector<LegendrePoint>& points, const SupersingularSet& ss, int jobs) {
  const long n = static_cast<long>(points.size());
  std::vector<LegendreRegionLabel> out(points.size(), LegendreRegionLabel::GoodOrdinary);
  FirstError error;
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = classify_point(points[static_cast<std::size_t>(i)], ss);
    } catch (...) {
      error.record(i, std::current_exception());
    }
  }
  error.rethrow();
  return out;
}

}  // namespace slopelab::kernels::omp
