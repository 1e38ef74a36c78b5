#include "slopelab/selftest.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "slopelab/adic_disk.hpp"
#include "slopelab/error.hpp"
#include "slopelab/hn_kottwitz.hpp"
#include "slopelab/isocrystal.hpp"
#include "slopelab/kernels.hpp"
#include "slopelab/legendre.hpp"

namespace slopelab {

namespace {

using Rng = std::mt19937_64;

Rational small_rational(Rng& rng) {
  return make_rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4));
}

SlopeMultiset multiset_with_total(Rng& rng, std::size_t n, const Rational& total) {
  std::vector<Rational> v;
  Rational sum = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    v.push_back(small_rational(rng));
    sum += v.back();
  }
  v.push_back(total - sum);
  return SlopeMultiset(std::move(v));
}

OrderResult flipped(OrderResult r) {
  if (r == OrderResult::DominatesOrEqual) return OrderResult::DominatedOrEqual;
  if (r == OrderResult::DominatedOrEqual) return OrderResult::DominatesOrEqual;
  return r;
}

CheckResult dominance_duality(Rng& rng) {
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 1 + rng() % 5;
    Rational t = small_rational(rng);
    auto a = multiset_with_total(rng, n, t), b = multiset_with_total(rng, n, t);
    auto ab = dominance(a, b);
    if (ab == OrderResult::DifferentFrame || dominance(b, a) != flipped(ab))
      return {"np-duality", false, a.to_string() + " vs " + b.to_string()};
    Rational c = make_rational(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
    if (dominance(scale(c, a), scale(c, b)) != ab) return {"np-duality", false, "scaling changed the order"};
  }
  return {"np-duality", true, "200 random pairs"};
}

CheckResult simple_slopes() {
  long cases = 0;
  for (long h = 1; h <= 4; ++h)
    for (long d = -4; d <= 4; ++d) {
      if (std::gcd(d, h) != 1) continue;
      Rational lam = make_rational(d, h);
      if (newton_slopes(simple_isocrystal(5, d, h)) != SlopeMultiset(std::vector<Rational>(h, lam)))
        return {"isocrystal-simple", false, "lambda = " + to_string(lam)};
      if (newton_slopes(b_lambda_matrix(5, d, h)) != SlopeMultiset(std::vector<Rational>(h, -lam)))
        return {"isocrystal-simple", false, "B(lambda), lambda = " + to_string(lam)};
      ++cases;
    }
  return {"isocrystal-simple", true, std::to_string(cases) + " slopes"};
}

CheckResult sum_and_tensor() {
  auto a = simple_isocrystal(3, 1, 2);
  auto b = simple_isocrystal(3, -1, 1);
  auto sum = newton_slopes(direct_sum(a, b));
  auto ten = newton_slopes(tensor_product(a, b));
  bool ok = sum == SlopeMultiset::parse("-1,1/2,1/2") && ten == SlopeMultiset::parse("-1/2,-1/2");
  return {"isocrystal-sum-tensor", ok, sum.to_string() + " " + ten.to_string()};
}

CheckResult kottwitz_shape() {
  struct Case {
    std::size_t r;
    std::vector<long> mu;
    std::size_t size;
  };
  for (const auto& c : {Case{2, {0, 1}, 2}, Case{3, {0, 0, 1}, 3}, Case{3, {0, 1, 2}, 4}}) {
    auto set = kottwitz_set(c.r, c.mu);
    std::vector<Rational> mu(c.mu.begin(), c.mu.end());
    SlopeMultiset m(mu);
    if (set.size() != c.size) return {"kottwitz", false, "size " + std::to_string(set.size())};
    for (const auto& nu : set)
      if (!dominates_or_equal(nu, m) || nu.total() != m.total()) return {"kottwitz", false, nu.to_string()};
  }
  return {"kottwitz", true, "B(GL_2,{0,1}), B(GL_3,{0,0,1}), B(GL_3,{0,1,2})"};
}

CheckResult hn_sweep(int jobs) {
  auto tuples = kernels::distinct_slope_tuples(4, {-2, -1, 0, 1, 2});
  auto s = jobs > 1 ? kernels::omp::hn_dominance_sweep(tuples, 5, jobs) : kernels::serial::hn_dominance_sweep(tuples, 5);
  std::ostringstream d;
  d << s.filtrations << " filtrations";
  return {"hn-dominance", s.failures == 0, d.str()};
}

std::vector<CheckResult> dlambda(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (auto [p, d, h] : {std::tuple{5L, 1L, 2L}, std::tuple{3L, -1L, 3L}}) {
    auto ctx = DLambdaContext::make(p, d, h, 16);
    bool ok = true;
    std::string failed;
    for (const auto& c : run_dlambda_checks(ctx, seed, 5))
      if (!c.passed) {
        ok = false;
        failed += c.name + " ";
      }
    std::ostringstream name;
    name << "dlambda-" << p << "-" << d << "-" << h;
    out.push_back({name.str(), ok, ok ? "11 checks" : failed});
  }
  return out;
}

CheckResult tube_example() {
  const long p = 7;
  LocallyClosed z{RationalPoly{0, 1}, {}};
  auto gauss = tube_membership(AdicDiskPoint::gauss(p), z);
  auto half = tube_membership(AdicDiskPoint::disk(p, 0, make_rational(1, 2)), z);
  auto edge_pt = AdicDiskPoint::rank_two(p, 0, 0, AdicDiskPoint::Perturbation::Minus);
  auto edge = tube_membership(edge_pt, z);
  bool ok = !gauss.in && half.in && half.witness_kind == WitnessKind::Finite && half.witness == 2 && edge.in &&
            edge.witness_kind == WitnessKind::NoWitness && !spmax_preimage_membership(edge_pt, z);
  return {"tube-example", ok, "Gauss out, disk:0:1/2 in with N = 2, boundary rank-2 point without witness"};
}

CheckResult anticontinuity(Rng& rng) {
  const long p = 5;
  const std::vector<RationalPoly> polys{{0, 1}, {-1, 0, 1}, {2, -3, 1}, {1, 1, 0, 1}};
  for (int i = 0; i < 200; ++i) {
    Rational c = static_cast<long>(rng() % 25) - 12;
    Rational s = make_rational(static_cast<long>(rng() % 7), 2);
    AdicDiskPoint x = AdicDiskPoint::disk(p, c, s);
    if (rng() % 3 == 0) x = AdicDiskPoint::classical(p, c);
    if (rng() % 3 == 1 && s > 0) x = AdicDiskPoint::rank_two(p, c, s, rng() % 2 ? AdicDiskPoint::Perturbation::Plus : AdicDiskPoint::Perturbation::Minus);
    const auto top = max_generalization(x);
    for (const auto& f : polys) {
      auto v = eval_norm(top, f);
      bool rational_union = false;
      for (long n = 1; n <= 64 && !rational_union; ++n) rational_union = v.is_zero() || v.pow(n) <= ExtValue(1, 0);
      if (spmax_preimage_membership(x, {f, {}}) != rational_union) return {"anticontinuity", false, x.to_string()};
      if (spmax_preimage_membership(x, {std::nullopt, {f}}) != (v == ExtValue(0, 0))) return {"anticontinuity", false, x.to_string()};
    }
  }
  return {"anticontinuity", true, "200 points, 4 polynomials"};
}

CheckResult legendre_seven() {
  auto ss = supersingular_lambdas(7);
  auto rows = emit_partition(7, default_grid(7));
  bool ok = ss.rational_members() == std::vector<long>{2, 4, 6} && count_supersingular_disks(7, rows) == 3;
  return {"legendre-7", ok, "supersingular {2,4,6}, three disks"};
}

CheckResult deuring_oracle(int jobs) {
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
    FiniteField f(p, 2);
    auto by_count = jobs > 1 ? kernels::omp::supersingular_by_count(f, jobs) : kernels::serial::supersingular_by_count(f);
    if (by_count != supersingular_lambdas(p).roots) return {"deuring-oracle", false, "p = " + std::to_string(p)};
  }
  return {"deuring-oracle", true, "odd p <= 23"};
}

CheckResult generalization_invariance(Rng& rng) {
  for (long p : {3L, 7L, 11L}) {
    auto ss = supersingular_lambdas(p);
    auto grid = default_grid(p);
    for (int i = 0; i < 100; ++i) {
      Rational c = static_cast<long>(rng() % 30) - 14;
      Rational s = make_rational(static_cast<long>(rng() % 5), 2);
      auto dir = s > 0 && rng() % 2 ? AdicDiskPoint::Perturbation::Plus : AdicDiskPoint::Perturbation::Minus;
      grid.push_back({AdicDiskPoint::rank_two(p, c, s, dir), rng() % 3 == 0});
    }
    for (const auto& x : grid) {
      LegendrePoint top{max_generalization(x.point), x.inverse_chart};
      if (classify_point(x, ss) != classify_point(top, ss)) return {"legendre-generalization", false, x.to_string()};
    }
  }
  return {"legendre-generalization", true, "default grids plus 300 rank-2 points"};
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed, int jobs) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  auto guarded = [&](const std::string& name, const std::function<CheckResult()>& f) {
    try {
      out.push_back(f());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };
  guarded("np-duality", [&] { return dominance_duality(rng); });
  guarded("isocrystal-simple", simple_slopes);
  guarded("isocrystal-sum-tensor", sum_and_tensor);
  guarded("kottwitz", kottwitz_shape);
  guarded("hn-dominance", [&] { return hn_sweep(jobs); });
  try {
    for (auto& c : dlambda(seed)) out.push_back(std::move(c));
  } catch (const std::exception& e) {
    out.push_back({"dlambda", false, std::string("threw: ") + e.what()});
  }
  guarded("tube-example", tube_example);
  guarded("anticontinuity", [&] { return anticontinuity(rng); });
  guarded("legendre-7", legendre_seven);
  guarded("deuring-oracle", [&] { return deuring_oracle(jobs); });
  guarded("legendre-generalization", [&] { return generalization_invariance(rng); });
  return out;
}

}  // namespace slopelab
