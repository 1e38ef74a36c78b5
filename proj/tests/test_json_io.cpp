#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "slopelab/error.hpp"
#include "slopelab/json_io.hpp"

using namespace slopelab;
using json_io::Json;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("scalar encoding") {
  auto x = PadicNumber::from_parts(7, -1, 1 + 3 * 49, 32);
  auto j = json_io::to_json(x);
  CHECK(j.dump() == R"({"p":7,"val":-1,"unit_digits":[1,0,3],"prec":32})");
  auto z = PadicNumber::zero_mod(7, 5);
  CHECK(json_io::to_json(z).dump() == R"({"p":7,"val":5,"unit_digits":[],"prec":0})");
  auto back = json_io::padic_from_json(json_io::to_json(z), 7);
  CHECK(back.is_zero());
  CHECK(back.absolute_precision() == 5);
  CHECK(json_io::padic_from_json(json_io::to_json(PadicNumber(7)), 7).is_exact_zero());
}

TEST_CASE("scalar readers normalize and validate") {
  // leading zero digit moves into the valuation
  auto x = json_io::padic_from_json(Json::parse(R"({"p":5,"val":0,"unit_digits":[0,2],"prec":4})"), 5);
  CHECK(x.valuation() == 1);
  CHECK(x.relative_precision() == 3);
  CHECK(x.unit() == 2);
  CHECK(json_io::padic_from_json(Json("3/10"), 5).valuation() == -1);
  CHECK(json_io::padic_from_json(Json(50), 5).valuation() == 2);
  CHECK(kind_of([] { json_io::padic_from_json(Json::parse(R"({"p":5,"val":0,"unit_digits":[7],"prec":4})"), 5); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { json_io::padic_from_json(Json::parse(R"({"p":3,"val":0,"unit_digits":[1],"prec":4})"), 5); }) ==
        ErrorKind::ContextMismatch);
  CHECK(kind_of([] { json_io::padic_from_json(Json::parse(R"({"p":5,"unit_digits":[1],"prec":4})"), 5); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { json_io::parse("{not json"); }) == ErrorKind::ParseError);
}

TEST_CASE("property: scalar and element round trips") {
  std::mt19937_64 rng(7);
  for (long p : {2L, 3L, 5L, 7L, 11L}) {
    for (int i = 0; i < 50; ++i) {
      auto x = testing::random_padic(rng, p, 1 + static_cast<long>(rng() % 30));
      auto y = json_io::padic_from_json(json_io::to_json(x), p);
      CHECK(y.valuation() == x.valuation());
      CHECK(y.relative_precision() == x.relative_precision());
      CHECK(y.unit() == x.unit());
    }
    auto ctx = UnramifiedContext::make(p, 3, 20);
    for (int i = 0; i < 20; ++i) {
      auto e = testing::random_element(rng, ctx);
      auto back = json_io::element_from_json(json_io::to_json(e), ctx);
      CHECK(json_io::to_json(back) == json_io::to_json(e));
    }
  }
}

TEST_CASE("isocrystal documents") {
  auto m = json_io::isocrystal_from_json(Json::parse(R"({"p":5,"a":1,"rank":2,"matrix":[[0,1],[125,0]]})"));
  CHECK(newton_slopes(m) == SlopeMultiset::parse("3/2,3/2"));
  auto again = json_io::isocrystal_from_json(json_io::to_json(m));
  CHECK(json_io::to_json(again) == json_io::to_json(m));
  CHECK(json_io::to_json(m)["rank"] == 2);

  auto twisted = simple_isocrystal(3, 1, 2);
  CHECK(json_io::to_json(json_io::isocrystal_from_json(json_io::to_json(twisted))) == json_io::to_json(twisted));

  CHECK(kind_of([] { json_io::isocrystal_from_json(Json::parse(R"({"p":5,"rank":2,"matrix":[[0,1]]})")); }) ==
        ErrorKind::SizeMismatch);
  CHECK(kind_of([] { json_io::isocrystal_from_json(Json::parse(R"({"p":6,"rank":1,"matrix":[[1]]})")); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { json_io::isocrystal_from_json(Json::parse(R"({"p":5,"a":2,"rank":1,"matrix":[[[1,2,3]]]})")); }) ==
        ErrorKind::ParseError);
}

TEST_CASE("multisets and polygons") {
  auto m = SlopeMultiset::parse("-1/2,0,2");
  CHECK(json_io::to_json(m).dump() == R"(["-1/2","0","2"])");
  CHECK(json_io::multiset_from_json(json_io::to_json(m)) == m);
  CHECK(json_io::multiset_from_json(Json::parse(R"([1,"1/3"])")) == SlopeMultiset::parse("1/3,1"));
  CHECK(json_io::to_json(np_from_multiset(SlopeMultiset::parse("-1,0"))).dump() == R"([["0","0"],["1","-1"],["2","-1"]])");
}

TEST_CASE("hn-check documents") {
  auto doc = Json::parse(R"({"p":5,"sweep":{"max_rank":3,"pool":[-1,0,1]},
    "cases":[{"isocrystal":{"p":5,"rank":2,"matrix":[[5,0],[0,1]]},"filtration":[[1],[0,1]]}]})");
  auto r = json_io::run_hn_check(doc);
  CHECK(r["passed"] == true);
  CHECK(r["sweep"]["isocrystals"] == 3 + 6 + 6);
  CHECK(r["sweep"]["filtrations"] == 3 * 1 + 6 * 3 + 6 * 13);
  CHECK(json_io::run_hn_check(doc, 3) == r);
  CHECK(kind_of([] { json_io::run_hn_check(Json::parse(R"({"sweep":{"pool":[1]}})")); }) == ErrorKind::ParseError);
  auto non_diag = Json::parse(R"({"cases":[{"isocrystal":{"p":5,"rank":2,"matrix":[[0,1],[5,0]]}}]})");
  CHECK(kind_of([&] { json_io::run_hn_check(non_diag); }) == ErrorKind::NotDiagonal);
}
