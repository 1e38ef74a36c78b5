#include "slopelab/legendre.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "slopelab/error.hpp"
#include "slopelab/kernels.hpp"

namespace slopelab {

namespace {

constexpr const char* kModule = "legendre_partition";

const ExtValue kOne{Rational(0), 0};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view to_string(LegendreRegionLabel label) {
  switch (label) {
    case LegendreRegionLabel::GoodOrdinary:
      return "GoodOrdinary";
    case LegendreRegionLabel::GoodSupersingular:
      return "GoodSupersingular";
    case LegendreRegionLabel::PotentiallyMultiplicative:
      return "PotentiallyMultiplicative";
  }
  return "?";
}

SlopeMultiset region_slopes(LegendreRegionLabel label) {
  if (label == LegendreRegionLabel::GoodSupersingular) return SlopeMultiset({Rational(-1, 2), Rational(-1, 2)});
  return SlopeMultiset({Rational(-1), Rational(0)});
}

std::vector<long> deuring_polynomial(long p) {
  if (p == 2) throw Error(ErrorKind::EvenPrime, kModule, "the Legendre family needs p odd");
  const unsigned long m = static_cast<unsigned long>((p - 1) / 2);
  std::vector<long> out(m + 1);
  for (unsigned long i = 0; i <= m; ++i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), m, i);
    mpz_class c = (b * b) % p;
    out[i] = c.get_si();
  }
  return out;
}

bool SupersingularSet::contains(FiniteField::Elem a) const { return std::binary_search(roots.begin(), roots.end(), a); }

std::vector<long> SupersingularSet::rational_members() const {
  std::vector<long> out;
  for (auto r : roots)
    if (field.in_prime_field(r)) out.push_back(static_cast<long>(r));
  return out;
}

SupersingularSet supersingular_lambdas(long p) {
  auto h = deuring_polynomial(p);
  FiniteField f(p, 2);
  std::vector<FiniteField::Elem> coeffs;
  for (long c : h) coeffs.push_back(f.from_integer(c));
  std::vector<FiniteField::Elem> roots;
  for (long i = 0; i < f.order(); ++i) {
    auto x = static_cast<FiniteField::Elem>(i);
    FiniteField::Elem acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
    if (acc == 0) roots.push_back(x);
  }
  // H_p is separable and splits over F_{p^2}
  if (roots.size() != h.size() - 1) throw std::logic_error("Deuring polynomial does not split into distinct roots");
  return {std::move(f), std::move(roots)};
}

long frobenius_trace(const FiniteField& f, FiniteField::Elem lambda) {
  if (lambda == f.zero() || lambda == f.one())
    throw Error(ErrorKind::SingularCurve, kModule, "lambda in {0, 1} gives a singular cubic");
  long sum = 0;
  for (long i = 0; i < f.order(); ++i) {
    auto x = static_cast<FiniteField::Elem>(i);
    auto rhs = f.mul(f.mul(x, f.sub(x, f.one())), f.sub(x, lambda));
    sum += f.legendre_symbol(rhs);
  }
  return -sum;
}

long count_points(const FiniteField& f, FiniteField::Elem lambda) { return f.order() + 1 - frobenius_trace(f, lambda); }

LegendrePoint LegendrePoint::parse(long p, std::string_view text) {
  std::string t = trim(text);
  std::string_view body = t;
  bool inv = false;
  if (body.starts_with("inv:")) {
    inv = true;
    body.remove_prefix(4);
  }
  return {AdicDiskPoint::parse(p, body), inv};
}

std::string LegendrePoint::to_string() const { return (inverse_chart ? "inv:" : "") + point.to_string(); }

LegendreRegionLabel classify_point(const LegendrePoint& x, const SupersingularSet& ss) {
  const AdicDiskPoint& pt = x.point;
  const long p = pt.prime();
  if (p != ss.field.characteristic())
    throw Error(ErrorKind::ContextMismatch, kModule, "point and supersingular set use different primes");
  if (pt.kind() == AdicDiskPoint::Kind::Classical) {
    const Rational& a = pt.center();
    if (a == 0 && x.inverse_chart) throw Error(ErrorKind::ExcludedPoint, kModule, "lambda = infinity is not on the curve");
    if (a == 0 || a == 1) throw Error(ErrorKind::ExcludedPoint, kModule, "lambda in {0, 1} is excluded");
  }

  const AdicDiskPoint top = max_generalization(pt);
  const RationalPoly t{Rational(0), Rational(1)};
  const RationalPoly t_minus_one{Rational(-1), Rational(1)};
  // In the inverse chart |lambda| = 1/|mu| and |lambda - 1| = |mu - 1|/|mu|,
  // so both tests read the same on mu once |mu| = 1 is known.
  if (eval_norm(top, t) < kOne || eval_norm(top, t_minus_one) < kOne) return LegendreRegionLabel::PotentiallyMultiplicative;

  const Specialization s = specialize(top);
  if (s.generic) return LegendreRegionLabel::GoodOrdinary;
  const FiniteField& f = ss.field;
  auto bar = f.from_integer(s.residue);
  if (x.inverse_chart) bar = f.inv(bar);
  return ss.contains(bar) ? LegendreRegionLabel::GoodSupersingular : LegendreRegionLabel::GoodOrdinary;
}

std::vector<LegendrePoint> default_grid(long p) {
  std::vector<LegendrePoint> out;
  for (long c = 0; c < p; ++c) {
    out.push_back({AdicDiskPoint::classical(p, Rational(c + p)), false});
    out.push_back({AdicDiskPoint::disk(p, Rational(c), Rational(1)), false});
    out.push_back({AdicDiskPoint::disk(p, Rational(c), Rational(0)), false});
    out.push_back({AdicDiskPoint::rank_two(p, Rational(c), Rational(0), AdicDiskPoint::Perturbation::Minus), false});
  }
  out.push_back({AdicDiskPoint::disk(p, Rational(0), Rational(1)), true});
  out.push_back({AdicDiskPoint::classical(p, Rational(p)), true});
  return out;
}

std::vector<LegendrePoint> read_grid(long p, std::istream& in) {
  std::vector<LegendrePoint> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back(LegendrePoint::parse(p, t));
  }
  return out;
}

std::vector<PartitionRow> emit_partition(long p, const std::vector<LegendrePoint>& grid, int jobs) {
  const auto ss = supersingular_lambdas(p);
  const auto labels = jobs > 1 ? kernels::omp::classify_all(grid, ss, jobs) : kernels::serial::classify_all(grid, ss);
  std::vector<PartitionRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({grid[i].to_string(), labels[i], region_slopes(labels[i])});
  return rows;
}

void write_csv(const std::vector<PartitionRow>& rows, std::ostream& out) {
  out << "point,label,slopes\n";
  for (const auto& r : rows) out << r.point << ',' << to_string(r.label) << ",\"" << r.slopes.to_string() << "\"\n";
}

namespace {

bool is_residue_disk(const LegendrePoint& x) {
  return !x.inverse_chart && x.point.kind() == AdicDiskPoint::Kind::Disk && x.point.radius_exponent() > 0;
}

std::string_view fill_for(LegendreRegionLabel label) {
  switch (label) {
    case LegendreRegionLabel::GoodSupersingular:
      return "#3060d0";
    case LegendreRegionLabel::PotentiallyMultiplicative:
      return "#d03030";
    case LegendreRegionLabel::GoodOrdinary:
      break;
  }
  return "#f0d040";
}

}  // namespace

long count_supersingular_disks(long p, const std::vector<PartitionRow>& rows) {
  long n = 0;
  for (const auto& r : rows) {
    if (r.label != LegendreRegionLabel::GoodSupersingular) continue;
    if (is_residue_disk(LegendrePoint::parse(p, r.point))) ++n;
  }
  return n;
}

void write_svg(long p, const std::vector<PartitionRow>& rows, std::ostream& out) {
  // Residue disks sit on a row across the good reduction ellipse. The red
  // background is the potentially multiplicative region, which contains the
  // disks around 0, 1 and infinity.
  const long width = std::max<long>(480, 70 * p + 120);
  const long height = 320;
  const long cy = height / 2;
  std::vector<std::string_view> colour(static_cast<std::size_t>(p), "#f0d040");
  std::vector<bool> sampled(static_cast<std::size_t>(p), false);
  std::string infinity_colour = "#d03030";
  for (const auto& r : rows) {
    auto x = LegendrePoint::parse(p, r.point);
    if (x.inverse_chart) {
      if (x.point.kind() == AdicDiskPoint::Kind::Disk && x.point.radius_exponent() > 0) infinity_colour = fill_for(r.label);
      continue;
    }
    if (!is_residue_disk(x)) continue;
    mpz_class c = x.point.center().get_num() % p;
    long res = c.get_si();
    if (res < 0) res += p;
    colour[static_cast<std::size_t>(res)] = fill_for(r.label);
    sampled[static_cast<std::size_t>(res)] = true;
  }

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
    << ' ' << height << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"#d03030\"/>\n";
  s << "<ellipse cx=\"" << width / 2 << "\" cy=\"" << cy << "\" rx=\"" << width / 2 - 20 << "\" ry=\"" << cy - 30
    << "\" fill=\"#f0d040\" stroke=\"black\"/>\n";
  const long step = (width - 120) / p;
  for (long c = 0; c < p; ++c) {
    const long cx = 60 + step / 2 + c * step;
    const auto i = static_cast<std::size_t>(c);
    s << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << std::min<long>(28, step / 2 - 4) << "\" fill=\"" << colour[i]
      << "\" stroke=\"black\"" << (sampled[i] ? "" : " stroke-dasharray=\"4 3\"") << "/>\n";
    if (c == 0 || c == 1) s << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
    s << "<text x=\"" << cx << "\" y=\"" << cy + 48 << "\" font-size=\"14\" text-anchor=\"middle\">" << c << "</text>\n";
  }
  s << "<circle cx=\"" << width - 30 << "\" cy=\"30\" r=\"18\" fill=\"" << infinity_colour << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << width - 30 << "\" y=\"35\" font-size=\"14\" text-anchor=\"middle\">inf</text>\n";
  s << "<text x=\"20\" y=\"24\" font-size=\"16\">p = " << p << "</text>\n";
  s << "</svg>\n";
  out << s.str();
}

}  // namespace slopelab
