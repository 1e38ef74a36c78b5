#include "slopelab/np_calculus.hpp"

#include <algorithm>
#include <set>

#include "slopelab/error.hpp"

namespace slopelab {

namespace {
const char* kModule = "np_calculus";
}

SlopeMultiset::SlopeMultiset(std::vector<Rational> slopes) : slopes_(std::move(slopes)) {
  for (auto& s : slopes_) s.canonicalize();
  std::sort(slopes_.begin(), slopes_.end());
}

SlopeMultiset SlopeMultiset::parse(std::string_view text) {
  std::vector<Rational> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    out.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return SlopeMultiset(std::move(out));
}

Rational SlopeMultiset::total() const {
  Rational s = 0;
  for (const auto& x : slopes_) s += x;
  return s;
}

std::vector<Rational> SlopeMultiset::partial_sums() const {
  std::vector<Rational> sums;
  sums.reserve(slopes_.size());
  Rational s = 0;
  for (const auto& x : slopes_) {
    s += x;
    sums.push_back(s);
  }
  return sums;
}

std::string SlopeMultiset::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    if (i) out += ",";
    out += slopelab::to_string(slopes_[i]);
  }
  return out + "}";
}

NewtonPolygon::NewtonPolygon(std::vector<PolygonVertex> vertices) {
  if (vertices.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, kModule, "polygon needs at least two vertices");
  }
  if (vertices.front().t != 0 || vertices.front().v != 0) {
    throw Error(ErrorKind::InvalidArgument, kModule, "polygon must start at (0,0)");
  }
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i].t <= vertices[i - 1].t) {
      throw Error(ErrorKind::InvalidArgument, kModule, "abscissae must increase strictly");
    }
  }
  // drop collinear interior vertices, then insist on strict convexity
  std::vector<PolygonVertex> kept{vertices.front()};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (kept.size() >= 2) {
      const auto& a = kept[kept.size() - 2];
      const auto& b = kept.back();
      const auto& c = vertices[i];
      Rational s1 = (b.v - a.v) / (b.t - a.t);
      Rational s2 = (c.v - b.v) / (c.t - b.t);
      if (s1 == s2) {
        kept.back() = c;
        continue;
      }
      if (s2 < s1) throw Error(ErrorKind::InvalidArgument, kModule, "polygon is not convex");
    }
    kept.push_back(vertices[i]);
  }
  vertices_ = std::move(kept);
}

Rational NewtonPolygon::operator()(const Rational& t) const {
  if (t < 0 || t > length()) {
    throw Error(ErrorKind::InvalidArgument, kModule, "evaluation outside the domain");
  }
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const auto& a = vertices_[i - 1];
    const auto& b = vertices_[i];
    if (t <= b.t) return a.v + (b.v - a.v) / (b.t - a.t) * (t - a.t);
  }
  return vertices_.back().v;
}

SlopeMultiset NewtonPolygon::slopes() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const auto& a = vertices_[i - 1];
    const auto& b = vertices_[i];
    Rational width = b.t - a.t;
    if (width.get_den() != 1) {
      throw Error(ErrorKind::InvalidArgument, kModule, "slopes need integral breakpoints");
    }
    Rational s = (b.v - a.v) / width;
    for (Integer k = 0; k < width.get_num(); ++k) out.push_back(s);
  }
  return SlopeMultiset(std::move(out));
}

NewtonPolygon NewtonPolygon::scaled(const Rational& a) const {
  if (a <= 0) throw Error(ErrorKind::InvalidArgument, kModule, "pointwise scaling needs a > 0");
  std::vector<PolygonVertex> out;
  for (const auto& v : vertices_) out.push_back({v.t, a * v.v});
  return NewtonPolygon(std::move(out));
}

std::string_view to_string(OrderResult r) {
  switch (r) {
    case OrderResult::DominatesOrEqual: return "DominatesOrEqual";
    case OrderResult::DominatedOrEqual: return "DominatedOrEqual";
    case OrderResult::Equal: return "Equal";
    case OrderResult::Incomparable: return "Incomparable";
    case OrderResult::DifferentFrame: return "DifferentFrame";
  }
  return "Unknown";
}

NewtonPolygon np_from_multiset(const SlopeMultiset& m) {
  if (m.empty()) throw Error(ErrorKind::EmptyMultiset, kModule, "Newton polygon of an empty multiset");
  std::vector<PolygonVertex> vertices{{0, 0}};
  Rational t = 0;
  Rational v = 0;
  for (const auto& s : m.slopes()) {
    t += 1;
    v += s;
    vertices.push_back({t, v});
  }
  return NewtonPolygon(std::move(vertices));
}

OrderResult dominance(const SlopeMultiset& a, const SlopeMultiset& b) {
  if (a.size() != b.size() || a.total() != b.total()) return OrderResult::DifferentFrame;
  auto sa = a.partial_sums();
  auto sb = b.partial_sums();
  bool all_ge = true;
  bool all_le = true;
  for (std::size_t k = 0; k + 1 < sa.size(); ++k) {
    if (sa[k] < sb[k]) all_ge = false;
    if (sa[k] > sb[k]) all_le = false;
  }
  if (all_ge && all_le) return OrderResult::Equal;
  if (all_ge) return OrderResult::DominatesOrEqual;
  if (all_le) return OrderResult::DominatedOrEqual;
  return OrderResult::Incomparable;
}

SlopeMultiset scale(const Rational& a, const SlopeMultiset& m) {
  std::vector<Rational> out;
  out.reserve(m.size());
  for (const auto& x : m.slopes()) out.push_back(a * x);
  return SlopeMultiset(std::move(out));
}

SlopeMultiset negate(const SlopeMultiset& m) { return scale(-1, m); }

bool conv_preceq(const NewtonPolygon& f, const NewtonPolygon& g) {
  if (f.length() != g.length()) {
    throw Error(ErrorKind::IntervalMismatch, kModule, "polygons live on different intervals");
  }
  if (f.end_value() != g.end_value()) return false;
  std::set<Rational> abscissae;
  for (const auto& v : f.breakpoints()) abscissae.insert(v.t);
  for (const auto& v : g.breakpoints()) abscissae.insert(v.t);
  return std::all_of(abscissae.begin(), abscissae.end(),
                     [&](const Rational& t) { return f(t) <= g(t); });
}

}  // namespace slopelab
