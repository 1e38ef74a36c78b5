#include "slopelab/hn_kottwitz.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "slopelab/error.hpp"

namespace slopelab {

namespace {

const char* kModule = "hn_kottwitz";

void require_diagonal(const Matrix& a) {
  if (!a.is_diagonal()) throw Error(ErrorKind::NotDiagonal, kModule, "Frobenius matrix is not diagonal");
}

std::size_t span_rank(const std::vector<std::vector<UnramifiedElement>>& vectors, const UnramifiedContext::Ptr& ctx,
                      std::size_t n) {
  if (vectors.empty()) return 0;
  Matrix m(ctx, n, vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = vectors[j][i];
  return rank(m);
}

}  // namespace

NewtonPolygon hn_polygon(const GradedPieces& pieces, bool harder_narasimhan) {
  std::vector<Rational> slopes;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].rank <= 0) throw Error(ErrorKind::InvalidArgument, kModule, "graded piece of nonpositive rank");
    if (harder_narasimhan && i > 0 && !(pieces[i].slope < pieces[i - 1].slope)) {
      throw Error(ErrorKind::NotStrictlyDecreasing, kModule, "Harder-Narasimhan slopes must strictly decrease");
    }
    slopes.insert(slopes.end(), static_cast<std::size_t>(pieces[i].rank), pieces[i].slope);
  }
  return np_from_multiset(SlopeMultiset(std::move(slopes)));
}

std::vector<Rational> diagonal_slopes(const Isocrystal& m) {
  require_diagonal(m.matrix());
  std::vector<Rational> out;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const auto& c = m.matrix()(i, i);
    if (c.is_exact_zero()) throw Error(ErrorKind::SingularFrobenius, kModule, "zero diagonal entry");
    auto v = c.valuation();
    if (!v) throw Error(ErrorKind::PrecisionExhausted, kModule, "diagonal entry is zero to working precision");
    out.emplace_back(*v);
  }
  return out;
}

GradedPieces filtration_pieces(const Isocrystal& m, const CoordinateFiltration& f) {
  const auto slopes = diagonal_slopes(m);
  const std::size_t n = m.rank();
  std::vector<bool> seen(n, false);
  std::size_t covered = 0;
  GradedPieces out;
  for (const auto& step : f) {
    std::set<std::size_t> s(step.begin(), step.end());
    if (s.size() != step.size()) throw Error(ErrorKind::InvalidArgument, kModule, "repeated coordinate in filtration step");
    Rational degree = 0;
    long added = 0;
    std::size_t contained = 0;
    for (std::size_t i : s) {
      if (i >= n) throw Error(ErrorKind::InvalidArgument, kModule, "coordinate out of range");
      if (seen[i]) {
        ++contained;
        continue;
      }
      seen[i] = true;
      degree += slopes[i];
      ++added;
    }
    if (contained != covered || added == 0) {
      throw Error(ErrorKind::InvalidArgument, kModule, "filtration must be a strictly increasing chain");
    }
    covered = s.size();
    Rational slope = degree / added;
    slope.canonicalize();
    out.push_back({added, slope});
  }
  if (covered != n) throw Error(ErrorKind::InvalidArgument, kModule, "filtration must end with the whole space");
  return out;
}

bool filtration_dominance_check(const Isocrystal& m, const CoordinateFiltration& f) {
  auto pieces = filtration_pieces(m, f);
  auto r = dominance(hn_polygon(pieces).slopes(), SlopeMultiset(diagonal_slopes(m)));
  return r == OrderResult::DominatesOrEqual || r == OrderResult::Equal;
}

std::vector<CoordinateFiltration> all_coordinate_filtrations(std::size_t n) {
  std::vector<CoordinateFiltration> out;
  // block[i] = position of coordinate i's block; enumerate surjections onto 0..k-1
  std::vector<std::size_t> block(n, 0);
  auto emit = [&](std::size_t k) {
    CoordinateFiltration f;
    std::vector<std::size_t> acc;
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t i = 0; i < n; ++i)
        if (block[i] == b) acc.push_back(i);
      std::sort(acc.begin(), acc.end());
      f.push_back(acc);
    }
    out.push_back(std::move(f));
  };
  for (std::size_t k = 1; k <= n; ++k) {
    std::fill(block.begin(), block.end(), 0);
    while (true) {
      std::vector<bool> used(k, false);
      for (auto b : block) used[b] = true;
      if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) emit(k);
      std::size_t i = 0;
      while (i < n && ++block[i] == k) block[i++] = 0;
      if (i == n) break;
    }
  }
  return out;
}

std::vector<SlopeMultiset> kottwitz_set(std::size_t r, const std::vector<long>& mu) {
  if (r == 0 || mu.size() != r) {
    throw Error(ErrorKind::SizeMismatch, kModule, "mu must have exactly r entries");
  }
  std::vector<long> sorted = mu;
  std::sort(sorted.begin(), sorted.end());
  std::vector<long> floor_poly(r + 1, 0);  // NP(mu) at integers
  for (std::size_t i = 0; i < r; ++i) floor_poly[i + 1] = floor_poly[i] + sorted[i];
  const long total = floor_poly[r];
  const long steps = static_cast<long>(r);

  std::vector<SlopeMultiset> out;
  std::vector<std::pair<long, long>> path{{0, 0}};
  // Depth-first over breakpoints with strictly increasing segment slopes.
  auto extend = [&](auto&& self, const Rational& prev_slope, bool first) -> void {
    auto [t, v] = path.back();
    if (t == steps) {
      std::vector<Rational> slopes;
      for (std::size_t k = 1; k < path.size(); ++k) {
        Rational s(path[k].second - path[k - 1].second, path[k].first - path[k - 1].first);
        s.canonicalize();
        slopes.insert(slopes.end(), static_cast<std::size_t>(path[k].first - path[k - 1].first), s);
      }
      out.emplace_back(std::move(slopes));
      return;
    }
    for (long t2 = t + 1; t2 <= steps; ++t2) {
      // a convex path ending at (r, total) stays under the chord to that end
      Rational cap = Rational(v) + Rational((total - v) * (t2 - t), steps - t);
      long hi = t2 == steps ? total : floor(cap).get_si();
      long lo = t2 == steps ? total : floor_poly[static_cast<std::size_t>(t2)];
      for (long v2 = lo; v2 <= hi; ++v2) {
        if (v2 < floor_poly[static_cast<std::size_t>(t2)]) continue;
        Rational s(v2 - v, t2 - t);
        if (!first && !(s > prev_slope)) continue;
        path.emplace_back(t2, v2);
        self(self, s, false);
        path.pop_back();
      }
    }
  };
  extend(extend, Rational(0), true);

  std::sort(out.begin(), out.end(), [](const SlopeMultiset& a, const SlopeMultiset& b) {
    auto pa = a.partial_sums(), pb = b.partial_sums();
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  return out;
}

long hodge_number(const FilteredModule& f, const std::vector<std::size_t>& coords) {
  const auto& ctx = f.module.phi.context();
  const std::size_t n = f.module.phi.rank();
  std::vector<std::vector<UnramifiedElement>> sub;
  for (std::size_t i : coords) {
    if (i >= n) throw Error(ErrorKind::InvalidArgument, kModule, "coordinate out of range");
    std::vector<UnramifiedElement> e(n, UnramifiedElement::zero(ctx));
    e[i] = UnramifiedElement::one(ctx);
    sub.push_back(std::move(e));
  }
  std::vector<long> dims;
  for (const auto& step : f.filtration) {
    auto both = step.span;
    both.insert(both.end(), sub.begin(), sub.end());
    long meet = static_cast<long>(span_rank(step.span, ctx, n) + sub.size()) - static_cast<long>(span_rank(both, ctx, n));
    dims.push_back(meet);
  }
  long t = 0;
  for (std::size_t j = 0; j + 1 < dims.size(); ++j) t += f.filtration[j].index * (dims[j] - dims[j + 1]);
  return t;
}

bool weakly_admissible_split(const FilteredModule& f) {
  validate_filtration(f);
  const auto& phi = f.module.phi;
  if (!phi.matrix().is_diagonal()) throw Error(ErrorKind::NotSplit, kModule, "Frobenius is not diagonal");
  const std::size_t n = phi.rank();
  const auto slopes = diagonal_slopes(phi);

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  auto t_newton = [&](const std::vector<std::size_t>& coords) {
    Rational t = 0;
    for (std::size_t i : coords) t += slopes[i];
    return t;
  };
  if (t_newton(all) != Rational(hodge_number(f, all))) return false;

  std::size_t weights = 0;
  const auto& steps = f.filtration;
  for (std::size_t j = 0; j + 1 < steps.size(); ++j) {
    if (span_rank(steps[j].span, phi.context(), n) != span_rank(steps[j + 1].span, phi.context(), n)) ++weights;
  }
  if (weights <= 1) return std::all_of(slopes.begin(), slopes.end(), [&](const Rational& s) { return s == slopes[0]; });

  auto distinct = slopes;
  std::sort(distinct.begin(), distinct.end());
  if (std::adjacent_find(distinct.begin(), distinct.end()) != distinct.end()) {
    throw Error(ErrorKind::NotSplit, kModule, "repeated slopes with several Hodge weights: subobjects are not enumerable");
  }
  if (n >= 8 * sizeof(unsigned long) - 1) throw Error(ErrorKind::InvalidArgument, kModule, "rank too large");
  const Matrix& nmat = f.module.n;
  const bool has_n = nmat.rows() != 0;
  if (has_n && (nmat.rows() != n || nmat.cols() != n)) throw Error(ErrorKind::SizeMismatch, kModule, "N has the wrong size");
  for (unsigned long mask = 1; mask + 1 < (1UL << n); ++mask) {
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1UL) coords.push_back(i);
    bool stable = true;
    // N-stable: no entry of N leads from inside the subset to outside it
    for (std::size_t j : coords)
      for (std::size_t i = 0; i < n && stable; ++i)
        if (has_n && !(mask >> i & 1UL) && !nmat(i, j).is_zero()) stable = false;
    if (!stable) continue;
    if (t_newton(coords) < Rational(hodge_number(f, coords))) return false;
  }
  return true;
}

}  // namespace slopelab
