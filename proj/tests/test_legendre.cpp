#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "slopelab/error.hpp"
#include "slopelab/legendre.hpp"

using namespace slopelab;

namespace {

using L = LegendreRegionLabel;
using P = AdicDiskPoint;

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

const std::vector<long> kOddPrimes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

// Point count by tabulating squares: #E = 1 + sum_x #{y : y^2 = rhs(x)}.
std::vector<long> counts_by_squares(const FiniteField& f) {
  const long q = f.order();
  std::vector<long> roots_of(static_cast<std::size_t>(q), 0);
  for (long y = 0; y < q; ++y) ++roots_of[f.mul(static_cast<FiniteField::Elem>(y), static_cast<FiniteField::Elem>(y))];
  std::vector<long> out(static_cast<std::size_t>(q), 0);
  for (long l = 2; l < q; ++l) {
    long n = 1;
    for (long x = 0; x < q; ++x) {
      auto xe = static_cast<FiniteField::Elem>(x);
      auto rhs = f.mul(f.mul(xe, f.sub(xe, f.one())), f.sub(xe, static_cast<FiniteField::Elem>(l)));
      n += roots_of[rhs];
    }
    out[static_cast<std::size_t>(l)] = n;
  }
  return out;
}

// Binomials by Pascal's triangle reduced mod p.
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

LegendrePoint lp(long p, std::string_view s) { return LegendrePoint::parse(p, s); }

Rational random_center(std::mt19937_64& rng, long p) {
  long num = static_cast<long>(rng() % 41) - 20;
  long den = 1;
  if (rng() % 3 == 0) {
    do den = 2 + static_cast<long>(rng() % 5);
    while (den % p == 0);
  }
  return Rational(num, den);
}

Rational random_radius(std::mt19937_64& rng) {
  static const Rational choices[] = {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  return choices[rng() % 6];
}

bool excluded(const LegendrePoint& x) {
  if (x.point.kind() != P::Kind::Classical) return false;
  const Rational& a = x.point.center();
  return a == 0 || a == 1;
}

LegendrePoint random_point(std::mt19937_64& rng, long p) {
  for (;;) {
    Rational c = random_center(rng, p);
    bool inv = rng() % 4 == 0;
    LegendrePoint x{P::classical(p, c), inv};
    switch (rng() % 3) {
      case 0:
        break;
      case 1:
        x.point = P::disk(p, c, random_radius(rng));
        break;
      default: {
        Rational s = random_radius(rng);
        auto dir = (s == 0 || rng() % 2) ? P::Perturbation::Minus : P::Perturbation::Plus;
        x.point = P::rank_two(p, c, s, dir);
      }
    }
    if (!excluded(x)) return x;
  }
}

Integer p_power(long p, long k) {
  Integer r = 1;
  for (long i = 0; i < k; ++i) r *= p;
  return r;
}

// Points inside a small neighbourhood of a rank-1 point beta.
std::vector<LegendrePoint> neighbourhood(std::mt19937_64& rng, const LegendrePoint& beta, long count) {
  const long p = beta.point.prime();
  const Rational& a = beta.point.center();
  std::vector<LegendrePoint> out;
  if (beta.point.kind() == P::Kind::Disk && beta.point.radius_exponent() == 0) {
    // {|T - c| >= 1 for every residue c} holds only the Gauss point among samples
    out.push_back(beta);
    return out;
  }
  Rational s = beta.point.kind() == P::Kind::Classical ? Rational(1) : beta.point.radius_exponent();
  long depth = ceil(s).get_si();
  for (long i = 0; i < count; ++i) {
    Rational c = a + Rational(p_power(p, depth + static_cast<long>(rng() % 2))) * Rational(static_cast<long>(rng() % 11) - 5);
    Rational r = s + Rational(static_cast<long>(rng() % 4), 2);
    LegendrePoint x{P::disk(p, c, r), beta.inverse_chart};
    if (rng() % 3 == 0) x.point = P::classical(p, c);
    if (rng() % 3 == 1) x.point = P::rank_two(p, c, r, rng() % 2 ? P::Perturbation::Minus : P::Perturbation::Plus);
    if (!excluded(x)) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("region slopes are fixed by the label") {
  CHECK(region_slopes(L::GoodOrdinary) == SlopeMultiset::parse("-1,0"));
  CHECK(region_slopes(L::GoodSupersingular) == SlopeMultiset::parse("-1/2,-1/2"));
  CHECK(region_slopes(L::PotentiallyMultiplicative) == SlopeMultiset::parse("-1,0"));
  CHECK(to_string(L::GoodSupersingular) == "GoodSupersingular");
}

TEST_CASE("Deuring polynomial coefficients") {
  CHECK(deuring_polynomial(3) == std::vector<long>{1, 1});
  CHECK(deuring_polynomial(7) == std::vector<long>{1, 2, 2, 1});
  for (long p : kOddPrimes) CHECK(deuring_polynomial(p) == deuring_by_pascal(p));
  CHECK(kind_of([] { deuring_polynomial(2); }) == ErrorKind::EvenPrime);
  CHECK(kind_of([] { supersingular_lambdas(2); }) == ErrorKind::EvenPrime);
}

TEST_CASE("supersingular parameters for small primes") {
  auto s7 = supersingular_lambdas(7);
  CHECK(s7.rational_members() == std::vector<long>{2, 4, 6});
  CHECK(s7.roots.size() == 3);

  auto s3 = supersingular_lambdas(3);
  CHECK(s3.rational_members() == std::vector<long>{2});
  CHECK(s3.roots.size() == 1);

  auto s5 = supersingular_lambdas(5);
  CHECK(s5.roots.size() == 2);
  CHECK(s5.rational_members().empty());
  // the two roots of t^2 + 4t + 1 are conjugate under Frobenius
  CHECK(s5.field.frobenius(s5.roots[0]) == s5.roots[1]);
  for (auto r : s5.roots) {
    const auto& f = s5.field;
    CHECK(f.add(f.add(f.mul(r, r), f.mul(f.from_integer(4), r)), f.one()) == 0);
  }
}

TEST_CASE("point counts and traces") {
  FiniteField f7(7, 1);
  CHECK(frobenius_trace(f7, 2) == 0);
  CHECK(frobenius_trace(f7, 3) != 0);
  CHECK(frobenius_trace(f7, 3) % 7 != 0);
  FiniteField f3(3, 1);
  CHECK(frobenius_trace(f3, 2) % 3 == 0);
  CHECK(count_points(f3, 2) == 4);  // y^2 = x^3 - x over F_3: infinity and x in {0, 1, 2}
  CHECK(kind_of([&] { count_points(f7, 0); }) == ErrorKind::SingularCurve);
  CHECK(kind_of([&] { frobenius_trace(f7, 1); }) == ErrorKind::SingularCurve);

  for (long p : {3L, 5L, 7L, 11L}) {
    for (int k : {1, 2}) {
      FiniteField f(p, k);
      auto oracle = counts_by_squares(f);
      for (long l = 2; l < f.order(); ++l) {
        long n = count_points(f, static_cast<FiniteField::Elem>(l));
        CHECK(n == oracle[static_cast<std::size_t>(l)]);
        // Hasse bound
        long a = f.order() + 1 - n;
        CHECK(a * a <= 4 * f.order());
      }
    }
  }
}

TEST_CASE("Deuring roots agree with point counting for p <= 50") {
  for (long p : kOddPrimes) {
    auto ss = supersingular_lambdas(p);
    auto counts = counts_by_squares(ss.field);
    std::vector<FiniteField::Elem> by_count;
    for (long l = 2; l < ss.field.order(); ++l)
      if ((ss.field.order() + 1 - counts[static_cast<std::size_t>(l)]) % p == 0) by_count.push_back(static_cast<FiniteField::Elem>(l));
    CHECK_MESSAGE(by_count == ss.roots, "p = " << p);
  }
}

TEST_CASE("classify examples at p = 7") {
  auto ss = supersingular_lambdas(7);
  auto cls = [&](std::string_view s) { return classify_point(lp(7, s), ss); };
  CHECK(cls("disk:2:1") == L::GoodSupersingular);
  CHECK(cls("disk:4:1") == L::GoodSupersingular);
  CHECK(cls("disk:6:1") == L::GoodSupersingular);
  CHECK(cls("disk:3:1") == L::GoodOrdinary);
  CHECK(cls("disk:2:0") == L::GoodOrdinary);
  CHECK(cls("inv:disk:0:1") == L::PotentiallyMultiplicative);
  CHECK(cls("inv:classical:7") == L::PotentiallyMultiplicative);
  CHECK(cls("classical:7") == L::PotentiallyMultiplicative);
  CHECK(cls("classical:8") == L::PotentiallyMultiplicative);
  CHECK(cls("classical:9") == L::GoodSupersingular);
  CHECK(cls("classical:10") == L::GoodOrdinary);
  CHECK(cls("disk:0:1/2") == L::PotentiallyMultiplicative);
  CHECK(cls("rank2:2:1:plus") == L::GoodSupersingular);
  CHECK(cls("rank2:2:0:minus") == L::GoodOrdinary);
  // lambda = 1/mu: mu = 2 gives 4, mu = 4 gives 2, mu = 3 gives 5
  CHECK(cls("inv:disk:2:1") == L::GoodSupersingular);
  CHECK(cls("inv:disk:4:1") == L::GoodSupersingular);
  CHECK(cls("inv:disk:3:1") == L::GoodOrdinary);
  CHECK(cls("inv:disk:1:1") == L::PotentiallyMultiplicative);
  CHECK(cls("inv:disk:0:0") == L::GoodOrdinary);

  CHECK(kind_of([&] { cls("classical:0"); }) == ErrorKind::ExcludedPoint);
  CHECK(kind_of([&] { cls("classical:1"); }) == ErrorKind::ExcludedPoint);
  CHECK(kind_of([&] { cls("inv:classical:0"); }) == ErrorKind::ExcludedPoint);
  CHECK(kind_of([&] { cls("inv:classical:1"); }) == ErrorKind::ExcludedPoint);
  CHECK(kind_of([&] { classify_point(lp(5, "disk:2:1"), ss); }) == ErrorKind::ContextMismatch);
  CHECK(lp(7, " inv:disk:0:1 ").to_string() == "inv:disk:0:1");
}

TEST_CASE("supersingular membership uses F_{p^2} at p = 5") {
  auto ss = supersingular_lambdas(5);
  for (long c = 2; c < 5; ++c) {
    LegendrePoint x{P::disk(5, Rational(c), Rational(1)), false};
    CHECK(classify_point(x, ss) == L::GoodOrdinary);
  }
}

TEST_CASE("default partitions") {
  auto rows7 = emit_partition(7, default_grid(7));
  CHECK(rows7.size() == 4 * 7 + 2);
  CHECK(count_supersingular_disks(7, rows7) == 3);
  std::set<std::string> ss_disks;
  for (const auto& r : rows7)
    if (r.label == L::GoodSupersingular && r.point.starts_with("disk:")) ss_disks.insert(r.point);
  CHECK(ss_disks == std::set<std::string>{"disk:2:1", "disk:4:1", "disk:6:1"});
  auto gauss2 = std::find_if(rows7.begin(), rows7.end(), [](const PartitionRow& r) { return r.point == "disk:2:0"; });
  REQUIRE(gauss2 != rows7.end());
  CHECK(gauss2->label == L::GoodOrdinary);

  auto rows5 = emit_partition(5, default_grid(5));
  CHECK(count_supersingular_disks(5, rows5) == 0);

  auto parallel = emit_partition(7, default_grid(7), 3);
  REQUIRE(parallel.size() == rows7.size());
  for (std::size_t i = 0; i < rows7.size(); ++i) {
    CHECK(parallel[i].point == rows7[i].point);
    CHECK(parallel[i].label == rows7[i].label);
  }
}

TEST_CASE("csv and svg output") {
  std::ostringstream empty;
  write_csv(emit_partition(7, {}), empty);
  CHECK(empty.str() == "point,label,slopes\n");

  std::istringstream grid("# comment\n\ndisk:2:1\n  inv:disk:0:1\n");
  auto rows = emit_partition(7, read_grid(7, grid));
  std::ostringstream csv;
  write_csv(rows, csv);
  CHECK(csv.str() ==
        "point,label,slopes\n"
        "disk:2:1,GoodSupersingular,\"{-1/2,-1/2}\"\n"
        "inv:disk:0:1,PotentiallyMultiplicative,\"{-1,0}\"\n");

  std::istringstream bad("disk:2:1\nnonsense\n");
  CHECK(kind_of([&] { read_grid(7, bad); }) == ErrorKind::ParseError);

  std::ostringstream svg;
  write_svg(7, emit_partition(7, default_grid(7)), svg);
  const std::string s = svg.str();
  CHECK(s.starts_with("<svg"));
  std::size_t blue = 0;
  for (auto pos = s.find("#3060d0"); pos != std::string::npos; pos = s.find("#3060d0", pos + 1)) ++blue;
  CHECK(blue == 3);
}

TEST_CASE("property: NP is invariant under generalization") {
  std::mt19937_64 rng(101);
  for (long p : {3L, 5L, 7L, 11L}) {
    auto ss = supersingular_lambdas(p);
    for (int i = 0; i < 300; ++i) {
      auto x = random_point(rng, p);
      LegendrePoint top{max_generalization(x.point), x.inverse_chart};
      CHECK_MESSAGE(classify_point(x, ss) == classify_point(top, ss), x.to_string());
    }
  }
}

TEST_CASE("property: labels are constant near rank-1 points and semicontinuous") {
  std::mt19937_64 rng(202);
  for (long p : {3L, 5L, 7L, 13L}) {
    auto ss = supersingular_lambdas(p);
    for (int i = 0; i < 150; ++i) {
      auto beta = random_point(rng, p);
      if (beta.point.kind() == P::Kind::RankTwo) continue;
      const auto lb = classify_point(beta, ss);
      for (const auto& x : neighbourhood(rng, beta, 12)) {
        const auto lx = classify_point(x, ss);
        CHECK_MESSAGE(lx == lb, beta.to_string() << " near " << x.to_string());
        auto order = dominance(region_slopes(lx), region_slopes(lb));
        CHECK((order == OrderResult::Equal || order == OrderResult::DominatesOrEqual));
      }
    }
  }
}

TEST_CASE("stratum polygons are ordered") {
  CHECK(dominance(region_slopes(L::GoodSupersingular), region_slopes(L::GoodOrdinary)) == OrderResult::DominatesOrEqual);
  CHECK(dominance(region_slopes(L::PotentiallyMultiplicative), region_slopes(L::GoodOrdinary)) == OrderResult::Equal);
}
