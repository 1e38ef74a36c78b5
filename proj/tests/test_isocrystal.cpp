#include <numeric>
#include <optional>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "slopelab/error.hpp"
#include "slopelab/isocrystal.hpp"

using namespace slopelab;
using namespace slopelab::testing;

namespace {

Matrix integer_matrix(const UnramifiedContext::Ptr& ctx, const std::vector<std::vector<long>>& rows) {
  Matrix m(ctx, rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = UnramifiedElement::from_integer(ctx, rows[i][j]);
  return m;
}

// Brute-force Newton polygon of sum c_i t^i from exact valuations (nullopt
// for a zero coefficient): the lower envelope of all chords, then root
// valuations are the negated slopes.
SlopeMultiset hull_oracle(const std::vector<std::optional<long>>& v) {
  const long n = static_cast<long>(v.size()) - 1;
  std::vector<Rational> env(v.size());
  for (long x = 0; x <= n; ++x) {
    std::optional<Rational> best;
    for (long i = 0; i <= x; ++i)
      for (long j = x; j <= n; ++j) {
        if (!v[i] || !v[j]) continue;
        Rational y = i == j ? Rational(*v[i]) : Rational(*v[i]) + Rational(*v[j] - *v[i], j - i) * (x - i);
        if (!best || y < *best) best = y;
      }
    env[x] = *best;
  }
  std::vector<Rational> roots;
  for (long x = 0; x < n; ++x) roots.push_back(-(env[x + 1] - env[x]));
  return SlopeMultiset(roots);
}

// det(tI - A) for a 3x3 integer matrix, low degree first.
std::vector<Integer> charpoly3(const std::vector<std::vector<long>>& a) {
  auto m = [&](int i, int j) { return Integer(a[i][j]); };
  Integer tr = m(0, 0) + m(1, 1) + m(2, 2);
  Integer minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) -
                   m(1, 2) * m(2, 1);
  Integer det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return {-det, minors, -tr, 1};
}

SlopeMultiset repeated(const Rational& s, long n) { return SlopeMultiset(std::vector<Rational>(static_cast<std::size_t>(n), s)); }

}  // namespace

TEST_CASE("newton_slopes examples") {
  auto qp = UnramifiedContext::make(5, 1);
  CHECK(newton_slopes(Isocrystal(integer_matrix(qp, {{1, 0}, {0, 5}}))) == SlopeMultiset::parse("0,1"));
  // companion of t^2 - p
  auto comp = Isocrystal(integer_matrix(qp, {{0, 5}, {1, 0}}));
  CHECK(newton_slopes(comp) == hull_oracle({1, std::nullopt, 0}));
  CHECK(newton_slopes(comp) == SlopeMultiset::parse("1/2,1/2"));
  CHECK(newton_slopes(simple_isocrystal(5, make_rational(2, 3))) == SlopeMultiset::parse("2/3,2/3,2/3"));
}

TEST_CASE("newton_slopes agrees with the explicit char-poly hull oracle") {
  std::mt19937_64 rng(31);
  for (long p : {2L, 3L, 7L}) {
    auto qp = UnramifiedContext::make(p, 1, 40);
    std::uniform_int_distribution<long> unit(1, 4 * p), shift(0, 3);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<std::vector<long>> a(3, std::vector<long>(3));
      for (auto& row : a)
        for (auto& x : row) {
          long u = unit(rng);
          long s = shift(rng);
          x = (rng() % 5 == 0) ? 0 : u * static_cast<long>(std::pow(p, s)) * (rng() % 2 ? 1 : -1);
        }
      auto cp = charpoly3(a);
      if (cp[0] == 0) continue;
      std::vector<std::optional<long>> vals;
      for (const auto& c : cp) vals.push_back(c == 0 ? std::nullopt : std::optional<long>(padic_valuation(c, p)));
      CHECK(newton_slopes(Isocrystal(integer_matrix(qp, a))) == hull_oracle(vals));
      ++checked;
    }
    CHECK(checked > 50);
  }
}

TEST_CASE("simple isocrystals and B(lambda) for all small lambda") {
  for (long p : {2L, 5L}) {
    for (long h = 1; h <= 6; ++h)
      for (long d = -6; d <= 6; ++d) {
        if (std::gcd(d, h) != 1) {
          CHECK_THROWS_AS(simple_isocrystal(p, d, h), Error);
          continue;
        }
        Rational lambda = make_rational(d, h);
        auto s = simple_isocrystal(p, d, h);
        CHECK(s.rank() == static_cast<std::size_t>(h));
        CHECK(newton_slopes(s) == repeated(lambda, h));
        auto b = b_lambda_matrix(p, lambda);
        CHECK(newton_slopes(b) == repeated(-lambda, h));
        // oracle: phi^h of B(lambda) is the scalar p^-d
        Matrix bh = b.matrix();
        for (long i = 1; i < h; ++i) bh = bh * b.matrix();
        auto ctx = b.context();
        CHECK(bh.equals_to_precision(Matrix::identity(ctx, static_cast<std::size_t>(h)).times_scalar(UnramifiedElement::power_of_p(ctx, -d))));
      }
  }
  try {
    simple_isocrystal(3, 2, 4);
    FAIL("expected NotLowestTerms");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotLowestTerms);
    CHECK(e.module() == "isocrystals");
  }
  CHECK(simple_isocrystal(3, 0, 1).matrix().equals_to_precision(Matrix::identity(UnramifiedContext::make(3, 1), 1)));
  CHECK(newton_slopes(simple_isocrystal(3, -1, 1)) == SlopeMultiset::parse("-1"));
}

TEST_CASE("validate_phi_n") {
  auto qp = UnramifiedContext::make(3, 1);
  auto phi = Isocrystal(integer_matrix(qp, {{3, 0}, {0, 1}}));
  CHECK(validate_phi_n({phi, Matrix(qp, 2, 2)}));
  CHECK(validate_phi_n({phi, integer_matrix(qp, {{0, 0}, {1, 0}})}));
  CHECK_FALSE(validate_phi_n({phi, Matrix::identity(qp, 2)}));
  CHECK_FALSE(validate_phi_n({phi, integer_matrix(qp, {{0, 1}, {0, 0}})}));

  // oracle: E_ij A = a_j E_ij and A E_ij = a_i E_ij, so N = E_ij works iff a_j = p a_i
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long> k(0, 3);
  std::uniform_int_distribution<std::size_t> idx(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<long> e{k(rng), k(rng), k(rng)};
    std::vector<UnramifiedElement> diag;
    for (long x : e) diag.push_back(UnramifiedElement::power_of_p(qp, x));
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Matrix n(qp, 3, 3);
    n(i, j) = UnramifiedElement::one(qp);
    CHECK(validate_phi_n({Isocrystal(Matrix::diagonal(diag)), n}) == (e[j] == e[i] + 1));
  }
}

TEST_CASE("dm_class examples") {
  auto qp = UnramifiedContext::make(7, 1);
  CHECK(dm_class(Isocrystal(integer_matrix(qp, {{1, 0}, {0, 7}}))) ==
        std::vector<DMComponent>{{make_rational(0), 1}, {make_rational(1), 1}});
  auto half = simple_isocrystal(7, make_rational(1, 2));
  CHECK(dm_class(half) == std::vector<DMComponent>{{make_rational(1, 2), 1}});
  CHECK(dm_class(direct_sum(half, half)) == std::vector<DMComponent>{{make_rational(1, 2), 2}});
  auto mixed = direct_sum(simple_isocrystal(7, make_rational(-1, 3)), half);
  auto dm = dm_class(mixed);
  long rank = 0;
  for (const auto& c : dm) rank += c.multiplicity * c.slope.get_den().get_si();
  CHECK(rank == 5);
}

TEST_CASE("base change invariance") {
  std::mt19937_64 rng(33);
  for (auto [p, a] : {std::pair{2L, 1}, std::pair{3L, 1}, std::pair{2L, 2}, std::pair{3L, 2}}) {
    auto small = UnramifiedContext::make(p, a, 64);
    for (int trial = 0; trial < 4; ++trial) {
      Isocrystal m(random_matrix(rng, small, 3));
      if (rank(m.matrix()) < 3) continue;
      auto slopes = newton_slopes(m);
      for (int mult = 1; mult <= 3; ++mult) {
        auto big = UnramifiedContext::make(p, a * mult, 64);
        FieldEmbedding emb(small, big);
        CHECK(newton_slopes(m.base_change(emb)) == slopes);
      }
    }
  }
}

TEST_CASE("basis independence, power rule and tensor additivity") {
  std::mt19937_64 rng(34);
  for (int a : {1, 2, 3}) {
    auto ctx = UnramifiedContext::make(3, a, 48);
    for (int trial = 0; trial < 6; ++trial) {
      Isocrystal m(random_matrix(rng, ctx, 3));
      if (rank(m.matrix()) < 3) continue;
      auto slopes = newton_slopes(m);
      // P in GL_3 of the integers: I + p * random
      Matrix pmat = Matrix::identity(ctx, 3) + random_matrix(rng, ctx, 3).times_scalar(UnramifiedElement::from_integer(ctx, 3));
      Isocrystal moved(inverse(pmat) * m.matrix() * pmat.frobenius());
      CHECK(newton_slopes(moved) == slopes);
      for (long h = 1; h <= 3; ++h) CHECK(newton_slopes(m.power(h)) == scale(make_rational(h), slopes));
    }
  }
  auto qp = UnramifiedContext::make(5, 1);
  std::uniform_int_distribution<long> k(-2, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<long> x{k(rng), k(rng)}, y{k(rng), k(rng), k(rng)};
    std::vector<UnramifiedElement> dx, dy;
    for (long e : x) dx.push_back(UnramifiedElement::power_of_p(qp, e));
    for (long e : y) dy.push_back(UnramifiedElement::power_of_p(qp, e));
    std::vector<Rational> sums;
    for (long e : x)
      for (long f : y) sums.push_back(Rational(e + f));
    CHECK(newton_slopes(tensor_product(Isocrystal(Matrix::diagonal(dx)), Isocrystal(Matrix::diagonal(dy)))) == SlopeMultiset(sums));
  }
}

TEST_CASE("error paths") {
  auto qp = UnramifiedContext::make(3, 1, 8);
  auto check_kind = [](auto&& f, ErrorKind kind) {
    try {
      f();
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == kind);
    }
  };
  check_kind([&] { newton_slopes(Isocrystal(integer_matrix(qp, {{1, 1}, {1, 1}}))); }, ErrorKind::SingularFrobenius);
  // t^2 - c1 t - 3^10 with c1 known only mod 3^3: the middle point may sit on the hull
  Matrix c(qp, 2, 2);
  c(0, 1) = UnramifiedElement::power_of_p(qp, 10);
  c(1, 0) = UnramifiedElement::one(qp);
  c(1, 1) = UnramifiedElement::from_scalar(qp, PadicNumber::zero_mod(3, 3));
  check_kind([&] { newton_slopes(Isocrystal(c)); }, ErrorKind::PrecisionExhausted);
  // known mod 3^6 it lies above the hull at height 5
  c(1, 1) = UnramifiedElement::from_scalar(qp, PadicNumber::zero_mod(3, 6));
  CHECK(newton_slopes(Isocrystal(c)) == SlopeMultiset::parse("5,5"));
  check_kind([&] { Isocrystal(Matrix(qp, 2, 3)); }, ErrorKind::SizeMismatch);
}

TEST_CASE("filtration validation") {
  auto qp = UnramifiedContext::make(3, 1);
  auto one = UnramifiedElement::one(qp), zero = UnramifiedElement::zero(qp);
  PhiNModule d{Isocrystal(integer_matrix(qp, {{1, 0}, {0, 3}})), Matrix(qp, 2, 2)};
  FilteredModule ok{d, {{0, {{one, zero}, {zero, one}}}, {1, {{one, one}}}, {2, {}}}};
  CHECK_NOTHROW(validate_filtration(ok));
  FilteredModule bad_order{d, {{1, {{one, zero}, {zero, one}}}, {1, {}}}};
  CHECK_THROWS_AS(validate_filtration(bad_order), Error);
  FilteredModule not_exhaustive{d, {{0, {{one, one}}}, {1, {}}}};
  CHECK_THROWS_AS(validate_filtration(not_exhaustive), Error);
  FilteredModule increasing{d, {{0, {{one, zero}, {zero, one}}}, {1, {{one, zero}}}, {2, {{zero, one}}}, {3, {}}}};
  CHECK_THROWS_AS(validate_filtration(increasing), Error);
}
