#include "slopelab/json_io.hpp"

#include "slopelab/error.hpp"
#include "slopelab/hn_kottwitz.hpp"

namespace slopelab::json_io {

namespace {

constexpr const char* kModule = "json_io";

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::ParseError, kModule, msg); }

long get_long(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) bad(std::string("key \"") + key + "\" must be an integer");
  return v.get<long>();
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const PadicNumber& x) {
  Json j;
  j["p"] = x.prime();
  if (x.is_zero()) {
    j["val"] = x.absolute_precision();
    j["unit_digits"] = Json::array();
    j["prec"] = 0;
    return j;
  }
  j["val"] = x.valuation();
  Json digits = Json::array();
  Integer u = x.unit();
  const long p = x.prime();
  while (u != 0) {
    Integer d = u % p;
    digits.push_back(d.get_si());
    u /= p;
  }
  j["unit_digits"] = digits;
  j["prec"] = x.relative_precision();
  return j;
}

PadicNumber padic_from_json(const Json& j, long p, long prec) {
  if (j.is_number_integer()) return PadicNumber::from_integer(p, Integer(j.get<long>()), prec);
  if (j.is_string()) return PadicNumber::from_rational(p, parse_rational(j.get<std::string>()), prec);
  if (!j.is_object()) bad("scalar must be an object, an integer or a rational string");
  if (get_long(j, "p") != p) throw Error(ErrorKind::ContextMismatch, kModule, "scalar prime differs from the context");
  long val = get_long(j, "val");
  long rel = get_long(j, "prec");
  if (!j.contains("unit_digits") || !j.at("unit_digits").is_array()) bad("missing unit_digits array");
  const Json& digits = j.at("unit_digits");
  if (rel < 0 || static_cast<long>(digits.size()) > rel) bad("unit_digits longer than prec");
  Integer unit = 0, scale = 1;
  for (const auto& d : digits) {
    if (!d.is_number_integer()) bad("digits must be integers");
    long v = d.get<long>();
    if (v < 0 || v >= p) bad("digit out of range");
    unit += scale * v;
    scale *= p;
  }
  if (unit == 0) return val >= PadicNumber::kExact ? PadicNumber(p) : PadicNumber::zero_mod(p, val + rel);
  // leading zero digits shift the valuation and use up precision
  while (unit % p == 0) {
    unit /= p;
    ++val;
    --rel;
  }
  return PadicNumber::from_parts(p, val, unit, rel);
}

Json to_json(const UnramifiedElement& x) {
  if (x.degree() == 1) return to_json(x.coefficients()[0]);
  Json a = Json::array();
  for (const auto& c : x.coefficients()) a.push_back(to_json(c));
  return a;
}

UnramifiedElement element_from_json(const Json& j, const UnramifiedContext::Ptr& ctx) {
  const long p = ctx->prime();
  if (!j.is_array()) return UnramifiedElement::from_scalar(ctx, padic_from_json(j, p, ctx->precision()));
  if (static_cast<int>(j.size()) != ctx->degree()) bad("element needs one coefficient per basis vector");
  std::vector<PadicNumber> c;
  for (const auto& e : j) c.push_back(padic_from_json(e, p, ctx->precision()));
  return UnramifiedElement(ctx, std::move(c));
}

Json to_json(const Isocrystal& m) {
  Json j;
  j["p"] = m.prime();
  j["a"] = m.base_degree();
  j["rank"] = m.rank();
  if (m.sigma_power() != 1) j["sigma_power"] = m.sigma_power();
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.rank(); ++k) row.push_back(to_json(m.matrix()(i, k)));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

Isocrystal isocrystal_from_json(const Json& j, long prec) {
  const long p = get_long(j, "p");
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, kModule, "p must be prime");
  const long a = j.contains("a") ? get_long(j, "a") : 1;
  const long rank = get_long(j, "rank");
  if (a < 1 || rank < 1) bad("a and rank must be positive");
  if (j.contains("prec")) prec = get_long(j, "prec");
  const long sigma = j.contains("sigma_power") ? get_long(j, "sigma_power") : 1;
  const Json& rows = j.at("matrix");
  if (!rows.is_array() || static_cast<long>(rows.size()) != rank) throw Error(ErrorKind::SizeMismatch, kModule, "matrix must have rank rows");
  auto ctx = UnramifiedContext::make(p, static_cast<int>(a), prec);
  Matrix m(ctx, static_cast<std::size_t>(rank), static_cast<std::size_t>(rank));
  for (long i = 0; i < rank; ++i) {
    const Json& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<long>(row.size()) != rank) throw Error(ErrorKind::SizeMismatch, kModule, "matrix must be square");
    for (long k = 0; k < rank; ++k)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = element_from_json(row.at(static_cast<std::size_t>(k)), ctx);
  }
  return Isocrystal(std::move(m), sigma);
}

Json to_json(const SlopeMultiset& m) {
  Json a = Json::array();
  for (const auto& s : m.slopes()) a.push_back(to_string(s));
  return a;
}

SlopeMultiset multiset_from_json(const Json& j) {
  if (!j.is_array()) bad("multiset must be an array");
  std::vector<Rational> v;
  for (const auto& e : j) {
    if (e.is_number_integer()) v.emplace_back(e.get<long>());
    else if (e.is_string()) v.push_back(parse_rational(e.get<std::string>()));
    else bad("slopes must be integers or rational strings");
  }
  return SlopeMultiset(std::move(v));
}

Json to_json(const NewtonPolygon& f) {
  Json a = Json::array();
  for (const auto& b : f.breakpoints()) a.push_back(Json::array({to_string(b.t), to_string(b.v)}));
  return a;
}

Json to_json(const kernels::SweepStats& s) {
  return Json{{"isocrystals", s.isocrystals}, {"filtrations", s.filtrations}, {"failures", s.failures}};
}

Json run_hn_check(const Json& doc, int jobs, long prec) {
  if (!doc.is_object()) bad("hn-check document must be an object");
  Json report;
  bool passed = true;
  if (doc.contains("sweep")) {
    const Json& s = doc.at("sweep");
    const long p = doc.contains("p") ? get_long(doc, "p") : 5;
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, kModule, "p must be prime");
    const long max_rank = get_long(s, "max_rank");
    if (max_rank < 1 || max_rank > 7) throw Error(ErrorKind::InvalidArgument, kModule, "max_rank must lie in 1..7");
    std::vector<long> pool;
    if (!s.contains("pool") || !s.at("pool").is_array()) bad("sweep needs a pool array");
    for (const auto& e : s.at("pool")) {
      if (!e.is_number_integer()) bad("pool entries must be integers");
      pool.push_back(e.get<long>());
    }
    auto tuples = kernels::distinct_slope_tuples(static_cast<std::size_t>(max_rank), pool);
    auto stats = jobs > 1 ? kernels::omp::hn_dominance_sweep(tuples, p, jobs) : kernels::serial::hn_dominance_sweep(tuples, p);
    report["sweep"] = to_json(stats);
    passed = passed && stats.failures == 0;
  }
  if (doc.contains("cases")) {
    Json out = Json::array();
    long index = 0;
    for (const auto& c : doc.at("cases")) {
      auto m = isocrystal_from_json(c.at("isocrystal"), prec);
      std::vector<CoordinateFiltration> filtrations;
      if (c.contains("filtration")) {
        CoordinateFiltration f;
        for (const auto& step : c.at("filtration")) f.push_back(step.get<std::vector<std::size_t>>());
        filtrations.push_back(std::move(f));
      } else {
        filtrations = all_coordinate_filtrations(m.rank());
      }
      long failures = 0;
      for (const auto& f : filtrations)
        if (!filtration_dominance_check(m, f)) ++failures;
      out.push_back(Json{{"index", index++}, {"checked", filtrations.size()}, {"failures", failures}});
      passed = passed && failures == 0;
    }
    report["cases"] = out;
  }
  report["passed"] = passed;
  return report;
}

}  // namespace slopelab::json_io
