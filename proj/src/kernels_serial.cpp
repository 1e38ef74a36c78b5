#include <algorithm>

#include "slopelab/hn_kottwitz.hpp"
#include "slopelab/kernels.hpp"

namespace slopelab::kernels {

std::vector<std::vector<long>> distinct_slope_tuples(std::size_t max_rank, const std::vector<long>& pool) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  std::vector<bool> used(pool.size(), false);
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_rank) return;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(pool[i]);
      self(self);
      cur.pop_back();
      used[i] = false;
    }
  };
  rec(rec);
  return out;
}

namespace serial {

std::vector<long> frobenius_traces(const FiniteField& f) {
  std::vector<long> out(static_cast<std::size_t>(f.order()), 0);
  for (long l = 2; l < f.order(); ++l) out[static_cast<std::size_t>(l)] = frobenius_trace(f, static_cast<FiniteField::Elem>(l));
  return out;
}

std::vector<FiniteField::Elem> supersingular_by_count(const FiniteField& f) {
  auto traces = frobenius_traces(f);
  std::vector<FiniteField::Elem> out;
  for (long l = 2; l < f.order(); ++l)
    if (traces[static_cast<std::size_t>(l)] % f.characteristic() == 0) out.push_back(static_cast<FiniteField::Elem>(l));
  return out;
}

SweepStats hn_dominance_sweep(const std::vector<std::vector<long>>& tuples, long p) {
  SweepStats stats;
  std::vector<std::vector<CoordinateFiltration>> by_rank;
  for (const auto& t : tuples) {
    while (by_rank.size() <= t.size()) by_rank.push_back(all_coordinate_filtrations(by_rank.size()));
    auto ctx = UnramifiedContext::make(p, 1);
    std::vector<UnramifiedElement> d;
    for (long e : t) d.push_back(UnramifiedElement::power_of_p(ctx, e));
    Isocrystal m(Matrix::diagonal(d));
    ++stats.isocrystals;
    for (const auto& f : by_rank[t.size()]) {
      ++stats.filtrations;
      if (!filtration_dominance_check(m, f)) ++stats.failures;
    }
  }
  return stats;
}

std::vector<LegendreRegionLabel> classify_all(const std::vector<LegendrePoint>& points, const SupersingularSet& ss) {
  std::vector<LegendreRegionLabel> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(classify_point(x, ss));
  return out;
}

}  // namespace serial

}  // namespace slopelab::kernels
