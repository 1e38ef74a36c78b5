// Acceptance run: one PASS/FAIL line per criterion with its time limit.
// Oracles here are written independently of the library code they check.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slopelab/adic_disk.hpp"
#include "slopelab/cli.hpp"
#include "slopelab/division_algebra.hpp"
#include "slopelab/hn_kottwitz.hpp"
#include "slopelab/isocrystal.hpp"
#include "slopelab/kernels.hpp"
#include "slopelab/legendre.hpp"

using namespace slopelab;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

// ---------------------------------------------------------------- oracles

std::vector<long> deuring_by_pascal(long p) {
  const long m = (p - 1) / 2;
  std::vector<long> row{1};
  for (long n = 1; n <= m; ++n) {
    std::vector<long> next(static_cast<std::size_t>(n + 1), 1);
    for (long i = 1; i < n; ++i) next[static_cast<std::size_t>(i)] = (row[static_cast<std::size_t>(i - 1)] + row[static_cast<std::size_t>(i)]) % p;
    row = next;
  }
  for (auto& c : row) c = c * c % p;
  return row;
}

// Supersingular parameters of F_{p^2} from #E by tabulating squares.
std::vector<FiniteField::Elem> supersingular_by_squares(const FiniteField& f) {
  const long q = f.order(), p = f.characteristic();
  std::vector<long> roots_of(static_cast<std::size_t>(q), 0);
  for (long y = 0; y < q; ++y) ++roots_of[f.mul(static_cast<FiniteField::Elem>(y), static_cast<FiniteField::Elem>(y))];
  std::vector<FiniteField::Elem> out;
  for (long l = 2; l < q; ++l) {
    long n = 1;
    const auto le = static_cast<FiniteField::Elem>(l);
    for (long x = 0; x < q; ++x) {
      auto xe = static_cast<FiniteField::Elem>(x);
      n += roots_of[f.mul(f.mul(xe, f.sub(xe, f.one())), f.sub(xe, le))];
    }
    if ((q + 1 - n) % p == 0) out.push_back(le);
  }
  return out;
}

// Lattice-path enumeration of B(GL_r, mu): choose interior breakpoints and
// integer heights, keep convex paths lying on or above the Hodge polygon.
std::set<std::vector<Rational>> kottwitz_by_paths(std::size_t r, std::vector<long> mu) {
  std::sort(mu.begin(), mu.end());
  std::vector<long> hodge(r + 1, 0);
  for (std::size_t i = 0; i < r; ++i) hodge[i + 1] = hodge[i] + mu[i];
  const long total = hodge[r];
  std::set<std::vector<Rational>> out;
  const std::size_t interior = r - 1;
  for (unsigned mask = 0; mask < (1u << interior); ++mask) {
    std::vector<long> xs{0};
    for (std::size_t i = 0; i < interior; ++i)
      if (mask & (1u << i)) xs.push_back(static_cast<long>(i + 1));
    xs.push_back(static_cast<long>(r));
    const std::size_t k = xs.size();
    std::vector<long> ys(k, 0);
    ys[k - 1] = total;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == k - 1) {
        std::vector<Rational> slopes;
        Rational prev_slope;
        for (std::size_t s = 0; s + 1 < k; ++s) {
          Rational sl = make_rational(ys[s + 1] - ys[s], xs[s + 1] - xs[s]);
          if (s > 0 && !(sl > prev_slope)) return;
          prev_slope = sl;
          for (long w = xs[s]; w < xs[s + 1]; ++w) slopes.push_back(sl);
        }
        // compare at every integer abscissa
        for (std::size_t s = 0; s + 1 < k; ++s)
          for (long x = xs[s]; x <= xs[s + 1]; ++x) {
            Rational v = ys[s] + make_rational(ys[s + 1] - ys[s], xs[s + 1] - xs[s]) * (x - xs[s]);
            if (v < hodge[static_cast<std::size_t>(x)]) return;
          }
        out.insert(slopes);
        return;
      }
      const long x = xs[j];
      for (long y = hodge[static_cast<std::size_t>(x)]; y * static_cast<long>(r) <= total * x; ++y) {
        ys[j] = y;
        rec(j + 1);
      }
    };
    rec(1);
  }
  return out;
}

// ---------------------------------------------------------------- criteria

Outcome legendre_seven() {
  const long p = 7;
  std::vector<long> deuring;
  auto h = deuring_by_pascal(p);
  for (long x = 0; x < p; ++x) {
    long acc = 0;
    for (auto it = h.rbegin(); it != h.rend(); ++it) acc = (acc * x + *it) % p;
    if (acc == 0) deuring.push_back(x);
  }
  std::vector<long> by_count;
  for (long l = 2; l < p; ++l) {
    long n = 1;
    for (long x = 0; x < p; ++x) {
      long rhs = x * (x - 1 + p) % p * ((x - l + p) % p) % p;
      for (long y = 0; y < p; ++y)
        if (y * y % p == rhs) ++n;
    }
    if ((p + 1 - n) % p == 0) by_count.push_back(l);
  }
  auto ss = supersingular_lambdas(p);
  const std::vector<long> expected{2, 4, 6};
  bool sets = deuring == expected && by_count == expected && ss.roots.size() == 3 && ss.rational_members() == expected;

  std::ostringstream out, err;
  int code = run_cli({"legendre", "--p", "7"}, out, err);
  std::istringstream csv(out.str());
  std::string line;
  long disks = 0;
  bool gauss_ordinary = false;
  while (std::getline(csv, line)) {
    if (line.starts_with("disk:") && line.find(":1,GoodSupersingular,") != std::string::npos) ++disks;
    if (line.starts_with("disk:2:0,GoodOrdinary,")) gauss_ordinary = true;
  }
  std::ostringstream d;
  d << "Deuring {2,4,6}: " << (deuring == expected) << ", point count: " << (by_count == expected) << ", CLI disks " << disks
    << ", Gauss point at 2 ordinary: " << gauss_ordinary;
  return {sets && code == 0 && disks == 3 && gauss_ordinary, d.str()};
}

Outcome cross_prime() {
  long checked = 0;
  for (long p = 3; p <= 50; p += 2) {
    if (!is_prime(p)) continue;
    FiniteField f(p, 2);
    if (supersingular_by_squares(f) != supersingular_lambdas(p).roots) return {false, "mismatch at p = " + std::to_string(p)};
    ++checked;
  }
  return {true, std::to_string(checked) + " odd primes"};
}

Outcome kottwitz() {
  struct Case {
    std::size_t r;
    std::vector<long> mu;
    std::size_t expected;
  };
  std::ostringstream d;
  bool ok = true;
  for (const auto& c : {Case{2, {0, 1}, 2}, Case{3, {0, 0, 1}, 3}}) {
    auto lib = kottwitz_set(c.r, c.mu);
    std::set<std::vector<Rational>> got;
    for (const auto& nu : lib) got.insert(nu.slopes());
    auto oracle = kottwitz_by_paths(c.r, c.mu);
    const long total = std::accumulate(c.mu.begin(), c.mu.end(), 0L);
    bool endpoints = std::all_of(lib.begin(), lib.end(), [&](const SlopeMultiset& nu) { return nu.size() == c.r && nu.total() == total; });
    ok = ok && lib.size() == c.expected && got == oracle && endpoints;
    d << "|B(GL_" << c.r << ")| = " << lib.size() << " ";
  }
  return {ok, d.str() + "against lattice paths"};
}

Outcome b_lambda() {
  long cases = 0;
  for (long p : {3L, 5L}) {
    for (long h = 1; h <= 6; ++h)
      for (long d = -6; d <= 6; ++d) {
        if (std::gcd(d, h) != 1) continue;
        const Rational lam = make_rational(d, h);
        const SlopeMultiset iso(std::vector<Rational>(static_cast<std::size_t>(h), lam));
        const SlopeMultiset neg(std::vector<Rational>(static_cast<std::size_t>(h), -lam));
        if (newton_slopes(simple_isocrystal(p, d, h)) != iso) return {false, "Q_p(lambda) at " + to_string(lam)};
        if (newton_slopes(b_lambda_matrix(p, d, h)) != neg) return {false, "B(lambda) at " + to_string(lam)};
        ++cases;
      }
  }
  return {true, std::to_string(cases) + " pairs (p, lambda)"};
}

Outcome hn_sweep() {
  auto tuples = kernels::distinct_slope_tuples(5, {-2, -1, 0, 1, 2});
  auto s = kernels::serial::hn_dominance_sweep(tuples, 5);
  std::ostringstream d;
  d << s.isocrystals << " isocrystals, " << s.filtrations << " filtrations, " << s.failures << " failures";
  // sum over r of 5!/(5-r)! times the ordered set partitions of r
  const long expected = 5 * 1 + 20 * 3 + 60 * 13 + 120 * 75 + 120 * 541;
  return {s.failures == 0 && s.filtrations == expected, d.str()};
}

DLambdaElement random_dl(std::mt19937_64& rng, const DLambdaContext::Ptr& ctx) {
  std::vector<UnramifiedElement> c;
  for (long i = 0; i < ctx->h(); ++i) {
    std::vector<PadicNumber> digits;
    for (long k = 0; k < ctx->h(); ++k)
      digits.push_back(PadicNumber::from_integer(ctx->prime(), static_cast<long>(rng() % 41) - 20, ctx->field()->precision()));
    c.emplace_back(ctx->field(), std::move(digits));
  }
  return DLambdaElement(ctx, std::move(c));
}

Outcome division_algebras() {
  std::mt19937_64 rng(2024);
  std::ostringstream d;
  for (auto [p, dd, h] : {std::tuple{5L, 1L, 2L}, std::tuple{7L, 2L, 3L}, std::tuple{3L, -1L, 4L}}) {
    auto ctx = DLambdaContext::make(p, dd, h, 16);
    const auto pi = DLambdaElement::pi(ctx);
    const auto one = DLambdaElement::one(ctx);
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
      std::vector<PadicNumber> digits;
      for (long k = 0; k < h; ++k) digits.push_back(PadicNumber::from_integer(p, static_cast<long>(rng() % 41) - 20, 16));
      UnramifiedElement a(ctx->field(), digits);
      ok = (pi * DLambdaElement::monomial(ctx, a, 0)).equals_to_precision(DLambdaElement::monomial(ctx, a.frobenius(), 1));
    }
    DLambdaElement power = one;
    for (long i = 0; i < h; ++i) power = power * pi;
    ok = ok && power.equals_to_precision(DLambdaElement::monomial(ctx, UnramifiedElement::power_of_p(ctx->field(), dd), 0));
    int inverted = 0;
    while (inverted < 100 && ok) {
      auto x = random_dl(rng, ctx);
      if (x.is_zero()) continue;
      auto y = dl_inverse(x);
      ok = (x * y).equals_to_precision(one) && (y * x).equals_to_precision(one);
      ++inverted;
    }
    ok = ok && centralizer_dimension(ctx) == 1 && monomial_image_rank(splitting_rep(ctx)) == static_cast<std::size_t>(h * h) &&
         f_to_pi_check(p, dd, h, 16);
    d << "(" << p << "," << dd << "," << h << ") " << (ok ? "ok " : "failed ");
    if (!ok) return {false, d.str()};
  }
  return {true, d.str()};
}

Outcome tubes_and_anticontinuity() {
  const long p = 7;
  LocallyClosed origin{RationalPoly{0, 1}, {}};
  auto gauss = tube_membership(AdicDiskPoint::gauss(p), origin);
  auto half = tube_membership(AdicDiskPoint::disk(p, 0, make_rational(1, 2)), origin);
  auto edge_point = AdicDiskPoint::rank_two(p, 0, 0, AdicDiskPoint::Perturbation::Minus);
  auto edge = tube_membership(edge_point, origin);
  bool example = !gauss.in && half.in && half.witness_kind == WitnessKind::Finite && half.witness == 2 && edge.in &&
                 edge.witness_kind == WitnessKind::NoWitness && !spmax_preimage_membership(edge_point, origin);
  if (!example) return {false, "worked example"};

  // sampled family over p = 5
  const long q = 5;
  const std::vector<RationalPoly> polys{{0, 1}, {-1, 1}, {1, 0, 1}, {0, -1, 0, 1}, {-5, 0, 1}};
  std::mt19937_64 rng(99);
  const ExtValue unit(0, 0), abs_p(1, 0);
  for (int i = 0; i < 200; ++i) {
    Rational c = make_rational(static_cast<long>(rng() % 51) - 25, rng() % 4 == 0 ? 2 : 1);
    Rational s = make_rational(static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 3));
    AdicDiskPoint x = AdicDiskPoint::disk(q, c, s);
    switch (rng() % 3) {
      case 0:
        x = AdicDiskPoint::classical(q, c);
        break;
      case 1:
        x = AdicDiskPoint::rank_two(q, c, s, s > 0 && rng() % 2 ? AdicDiskPoint::Perturbation::Plus : AdicDiskPoint::Perturbation::Minus);
        break;
      default:
        break;
    }
    const auto top = max_generalization(x);
    for (const auto& f : polys) {
      auto v = eval_norm(top, f);
      bool rational_union = v.is_zero();
      for (long n = 1; n <= 64 && !rational_union; ++n) rational_union = v.pow(n) <= abs_p;
      if (spmax_preimage_membership(x, {f, {}}) != rational_union) return {false, "V(f) at " + x.to_string()};
      if (spmax_preimage_membership(x, {std::nullopt, {f}}) != (v == unit)) return {false, "D(g) at " + x.to_string()};
    }
  }
  return {true, "worked example, 200 points x 5 polynomials"};
}

Outcome generalization() {
  std::mt19937_64 rng(8);
  long points = 0;
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    auto ss = supersingular_lambdas(p);
    auto grid = default_grid(p);
    for (int i = 0; i < 200; ++i) {
      Rational c = static_cast<long>(rng() % 61) - 30;
      Rational s = make_rational(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 2));
      auto dir = s > 0 && rng() % 2 ? AdicDiskPoint::Perturbation::Plus : AdicDiskPoint::Perturbation::Minus;
      grid.push_back({rng() % 2 ? AdicDiskPoint::rank_two(p, c, s, dir) : AdicDiskPoint::disk(p, c, s), rng() % 3 == 0});
    }
    for (const auto& x : grid) {
      if (x.point.kind() == AdicDiskPoint::Kind::Classical && (x.point.center() == 0 || x.point.center() == 1)) continue;
      LegendrePoint top{max_generalization(x.point), x.inverse_chart};
      if (classify_point(x, ss) != classify_point(top, ss)) return {false, x.to_string()};
      ++points;
    }
  }
  return {true, std::to_string(points) + " sampled points"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Legendre p = 7", 1.0, legendre_seven},
      {2, "Deuring roots = point-count set, odd p <= 50", 30.0, cross_prime},
      {3, "Kottwitz sets", 1.0, kottwitz},
      {4, "B(lambda) and Q_p(lambda) slopes, h <= 6, |d| <= 6", 5.0, b_lambda},
      {5, "HN dominance sweep, rank <= 5", 10.0, hn_sweep},
      {6, "D_lambda property suite", 20.0, division_algebras},
      {7, "tubes and anticontinuity", 5.0, tubes_and_anticontinuity},
      {8, "Legendre generalization invariance", 5.0, generalization},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && elapsed < c.limit_s;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << "  [" << o.detail << "; "
              << static_cast<long>(elapsed * 1000) << " ms, limit " << static_cast<long>(c.limit_s * 1000) << " ms]\n";
  }
  return failures == 0 ? 0 : 1;
}
