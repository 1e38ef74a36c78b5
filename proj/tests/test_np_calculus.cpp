#include "doctest.h"
#include "generators.hpp"
#include "slopelab/error.hpp"
#include "slopelab/np_calculus.hpp"

using namespace slopelab;

namespace {

SlopeMultiset ms(const char* s) { return SlopeMultiset::parse(s); }

std::vector<PolygonVertex> vertices(std::initializer_list<std::pair<const char*, const char*>> pts) {
  std::vector<PolygonVertex> out;
  for (auto [t, v] : pts) out.push_back({parse_rational(t), parse_rational(v)});
  return out;
}

// Value of NP(m) at t from the defining formula: sum of the first floor(t)
// slopes plus the fractional part of the next one.
Rational defining_formula(const SlopeMultiset& m, const Rational& t) {
  Rational acc = 0;
  Rational remaining = t;
  for (const auto& s : m.slopes()) {
    if (remaining <= 0) break;
    Rational step = remaining >= 1 ? Rational(1) : remaining;
    acc += s * step;
    remaining -= step;
  }
  return acc;
}

// Dominance from the pointwise geometric description, sampled on a grid
// finer than any breakpoint spacing.
OrderResult pointwise_oracle(const SlopeMultiset& a, const SlopeMultiset& b) {
  if (a.size() != b.size() || a.total() != b.total()) return OrderResult::DifferentFrame;
  bool ge = true, le = true;
  for (long k = 0; k <= static_cast<long>(a.size()) * 4; ++k) {
    Rational t = make_rational(k, 4);
    Rational fa = defining_formula(a, t), fb = defining_formula(b, t);
    if (fa < fb) ge = false;
    if (fa > fb) le = false;
  }
  if (ge && le) return OrderResult::Equal;
  if (ge) return OrderResult::DominatesOrEqual;
  if (le) return OrderResult::DominatedOrEqual;
  return OrderResult::Incomparable;
}

}  // namespace

TEST_CASE("np_from_multiset examples") {
  CHECK(np_from_multiset(ms("0")).breakpoints() == vertices({{"0", "0"}, {"1", "0"}}));
  CHECK(np_from_multiset(ms("-1,0")).breakpoints() == vertices({{"0", "0"}, {"1", "-1"}, {"2", "-1"}}));
  CHECK(np_from_multiset(ms("1/2,1/2")).breakpoints() == vertices({{"0", "0"}, {"2", "1"}}));
  CHECK_THROWS_AS(np_from_multiset(SlopeMultiset{}), Error);
  try {
    np_from_multiset(SlopeMultiset{});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyMultiset);
  }
}

TEST_CASE("multisets are stored sorted") {
  CHECK(ms("1,-1/2,0").slopes() == ms("-1/2,0,1").slopes());
  CHECK(ms("2/4").slopes().front() == make_rational(1, 2));
}

TEST_CASE("dominance examples") {
  CHECK(dominance(ms("-1/2,-1/2"), ms("-1,0")) == OrderResult::DominatesOrEqual);
  CHECK(dominance(ms("-1,0"), ms("-1/2,-1/2")) == OrderResult::DominatedOrEqual);
  CHECK(dominance(ms("0,1"), ms("0,1")) == OrderResult::Equal);
  CHECK(dominance(ms("0,3"), ms("1,1")) == OrderResult::DifferentFrame);
  CHECK(dominance(ms("0,1"), ms("0,0,1")) == OrderResult::DifferentFrame);
  CHECK(dominance(ms("0,1,2"), ms("0,0,3")) == OrderResult::DominatesOrEqual);
  // partial sums (-1, 1) vs (0, 0): mixed
  CHECK(dominance(ms("-1,2,2"), ms("0,0,3")) == OrderResult::Incomparable);
  CHECK(dominance(ms("-1,2,2,3"), ms("0,0,1,5")) == OrderResult::Incomparable);
}

TEST_CASE("scale and negate") {
  CHECK(scale(make_rational(2), ms("0,1/2")) == ms("0,1"));
  CHECK(negate(ms("-1,0")) == ms("0,1"));
  CHECK(scale(make_rational(3), ms("1/3,1/3,1/3")) == ms("1,1,1"));
  CHECK(negate(ms("-1,0")).slopes().front() == 0);
}

TEST_CASE("conv_preceq examples") {
  auto f = np_from_multiset(ms("0,1"));
  auto g = np_from_multiset(ms("1/2,1/2"));
  // breakpoint oracle: f(1) = 0 <= g(1) = 1/2, endpoints agree
  CHECK(f(Rational(1)) == 0);
  CHECK(g(Rational(1)) == make_rational(1, 2));
  CHECK(conv_preceq(f, g));
  CHECK_FALSE(conv_preceq(g, f));
  CHECK(conv_preceq(f, f));
  CHECK_THROWS_AS(conv_preceq(f, np_from_multiset(ms("0,0,1"))), Error);
  CHECK_FALSE(conv_preceq(f, np_from_multiset(ms("0,2"))));
}

TEST_CASE("polygon normalization drops collinear points and rejects concavity") {
  NewtonPolygon p(vertices({{"0", "0"}, {"1", "1"}, {"2", "2"}, {"3", "4"}}));
  CHECK(p.breakpoints() == vertices({{"0", "0"}, {"2", "2"}, {"3", "4"}}));
  CHECK_THROWS_AS(NewtonPolygon(vertices({{"0", "0"}, {"1", "1"}, {"2", "1"}})), Error);
  CHECK_THROWS_AS(NewtonPolygon(vertices({{"0", "1"}, {"1", "1"}})), Error);
}

TEST_CASE("round trip multiset -> polygon -> multiset") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto m = testing::random_multiset(rng, 1 + trial % 7);
    CHECK(np_from_multiset(m).slopes() == m);
  }
}

TEST_CASE("polygon agrees with the defining formula") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_multiset(rng, 1 + trial % 6);
    auto np = np_from_multiset(m);
    for (long k = 0; k <= static_cast<long>(m.size()) * 3; ++k) {
      Rational t = make_rational(k, 3);
      CHECK(np(t) == defining_formula(m, t));
    }
  }
}

TEST_CASE("dominance agrees with the pointwise oracle and is a partial order") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 400; ++trial) {
    auto a = testing::random_multiset(rng, 1 + trial % 6);
    auto b = testing::perturb_keeping_frame(rng, a);
    auto c = testing::perturb_keeping_frame(rng, b);
    CHECK(dominance(a, b) == pointwise_oracle(a, b));
    CHECK(dominance(a, a) == OrderResult::Equal);
    // antisymmetry
    if (dominates_or_equal(a, b) && dominates_or_equal(b, a)) CHECK(a == b);
    // transitivity
    if (dominates_or_equal(a, b) && dominates_or_equal(b, c)) CHECK(dominates_or_equal(a, c));
    // conv_preceq(f, g) <=> slopes(g) dominates slopes(f)
    CHECK(conv_preceq(np_from_multiset(a), np_from_multiset(b)) == dominates_or_equal(b, a));
  }
}

TEST_CASE("scaling covariance") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_multiset(rng, 1 + trial % 5);
    Rational a = make_rational(1 + trial % 4, 1 + trial % 3);
    CHECK(np_from_multiset(scale(a, m)) == np_from_multiset(m).scaled(a));
    // negative factors reverse order but stay elementwise
    auto neg = scale(-a, m);
    std::vector<Rational> expected;
    for (const auto& x : m.slopes()) expected.push_back(-a * x);
    CHECK(neg == SlopeMultiset(expected));
    CHECK(negate(negate(m)) == m);
  }
}
