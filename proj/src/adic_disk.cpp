#include "slopelab/adic_disk.hpp"

#include <cctype>
#include <stdexcept>

#include "slopelab/error.hpp"

namespace slopelab {

namespace {

const char* kModule = "adic_disk";

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

void require_integral(const Rational& c, long p) {
  if (c != 0 && padic_valuation(c, p) < 0) {
    throw Error(ErrorKind::InvalidArgument, kModule, "coefficient " + to_string(c) + " is not p-integral");
  }
}

// Coefficients of f(T) expanded around a: f = sum c_i (T - a)^i.
RationalPoly taylor_shift(const RationalPoly& f, const Rational& a) {
  RationalPoly c(f.size(), Rational(0));
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] == 0) continue;
    Rational apow = 1;
    for (std::size_t i = k + 1; i-- > 0;) {
      // term C(k,i) a^(k-i) goes to c_i; walk i downward so a^(k-i) grows
      c[i] += Rational(binomial(k, i)) * f[k] * apow;
      apow *= a;
    }
  }
  return c;
}

long residue_mod(const Rational& a, long p) {
  Integer num = a.get_num() % p, den = a.get_den() % p;
  if (num < 0) num += p;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(p).get_mpz_t());
  Integer r = (num * inv) % p;
  return r.get_si();
}

long eval_mod(const RationalPoly& f, long p, long x) {
  long acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + residue_mod(f[i], p)) % p;
  return acc;
}

bool vanishes_mod(const RationalPoly& f, long p) {
  for (const auto& c : f)
    if (c != 0 && padic_valuation(c, p) == 0) return false;
  return true;
}

bool is_zero_poly(const RationalPoly& f) {
  for (const auto& c : f)
    if (c != 0) return false;
  return true;
}

}  // namespace

RationalPoly parse_polynomial(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorKind::ParseError, kModule, "empty polynomial");
  RationalPoly out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::ParseError, kModule, why + " in \"" + std::string(text) + "\""); };
  auto digits = [&]() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(start, i - start);
  };
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Rational coef = 1;
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::string num = digits();
      if (i < s.size() && s[i] == '/') {
        ++i;
        std::string den = digits();
        if (den.empty()) fail("missing denominator");
        num += "/" + den;
      }
      coef = parse_rational(num);
      have_coef = true;
    }
    std::size_t degree = 0;
    if (i < s.size() && (s[i] == '*' || s[i] == 'T')) {
      if (s[i] == '*') {
        if (!have_coef) fail("dangling *");
        ++i;
      }
      if (i >= s.size() || s[i] != 'T') fail("expected T");
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e = digits();
        if (e.empty() || e.size() > 4) fail("bad exponent");
        degree = std::stoul(e);
      }
    } else if (!have_coef) {
      fail("expected a term");
    }
    if (out.size() <= degree) out.resize(degree + 1, Rational(0));
    out[degree] += sign * coef;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::string polynomial_to_string(const RationalPoly& f) {
  std::string out;
  for (std::size_t k = f.size(); k-- > 0;) {
    if (f[k] == 0) continue;
    Rational c = f[k];
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    Rational mag = abs(c);
    if (k == 0 || mag != 1) out += to_string(mag) + (k ? "*" : "");
    if (k >= 1) out += "T";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

RationalPoly translate(const RationalPoly& f, const Rational& c) {
  // f(T - c) is the Taylor expansion of f around c read in the variable T
  return taylor_shift(f, -c);
}

ExtValue ExtValue::operator*(const ExtValue& o) const {
  if (zero_ || o.zero_) return zero();
  return ExtValue(q_ + o.q_, eps_ + o.eps_);
}

ExtValue ExtValue::pow(long n) const {
  if (zero_) return n == 0 ? ExtValue(0, 0) : zero();
  return ExtValue(q_ * n, eps_ * n);
}

std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
  if (a.zero_ || b.zero_) return b.zero_ <=> a.zero_;
  int c = cmp(b.q_, a.q_);  // smaller exponent means larger value
  if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.eps_ <=> b.eps_;
}

std::string ExtValue::to_string(long p) const {
  if (zero_) return "0";
  std::string out = std::to_string(p) + "^(" + slopelab::to_string(-q_) + ")";
  if (eps_ != 0) out += "*gamma^(" + std::to_string(eps_) + ")";
  return out;
}

AdicDiskPoint AdicDiskPoint::classical(long p, Rational center) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, kModule, "p must be prime");
  center.canonicalize();
  if (center != 0 && padic_valuation(center, p) < 0) {
    throw Error(ErrorKind::OutsideUnitDisk, kModule, "centre " + slopelab::to_string(center) + " is not p-integral");
  }
  AdicDiskPoint x;
  x.p_ = p;
  x.center_ = std::move(center);
  return x;
}

AdicDiskPoint AdicDiskPoint::disk(long p, Rational center, Rational s) {
  AdicDiskPoint x = classical(p, std::move(center));
  s.canonicalize();
  if (s < 0) throw Error(ErrorKind::OutsideUnitDisk, kModule, "radius exceeds 1");
  x.kind_ = Kind::Disk;
  x.s_ = std::move(s);
  return x;
}

AdicDiskPoint AdicDiskPoint::rank_two(long p, Rational center, Rational s, Perturbation dir) {
  AdicDiskPoint x = disk(p, std::move(center), std::move(s));
  if (dir == Perturbation::Plus && x.s_ == 0) {
    throw Error(ErrorKind::OutsideUnitDisk, kModule, "radius 1 cannot be perturbed upward inside the disk");
  }
  x.kind_ = Kind::RankTwo;
  x.dir_ = dir;
  return x;
}

AdicDiskPoint AdicDiskPoint::parse(long p, std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  auto bad = [&]() { return Error(ErrorKind::ParseError, kModule, "bad point descriptor \"" + std::string(text) + "\""); };
  if (parts[0] == "classical" && parts.size() == 2) return classical(p, parse_rational(parts[1]));
  if (parts[0] == "disk" && parts.size() == 3) return disk(p, parse_rational(parts[1]), parse_rational(parts[2]));
  if (parts[0] == "rank2" && parts.size() == 4) {
    Perturbation dir;
    if (parts[3] == "minus") dir = Perturbation::Minus;
    else if (parts[3] == "plus") dir = Perturbation::Plus;
    else throw bad();
    return rank_two(p, parse_rational(parts[1]), parse_rational(parts[2]), dir);
  }
  throw bad();
}

AdicDiskPoint AdicDiskPoint::translated(const Rational& c) const {
  AdicDiskPoint x = *this;
  x.center_ += c;
  x.center_.canonicalize();
  if (x.center_ != 0 && padic_valuation(x.center_, p_) < 0) throw Error(ErrorKind::OutsideUnitDisk, kModule, "translate leaves the disk");
  return x;
}

std::string AdicDiskPoint::to_string() const {
  switch (kind_) {
    case Kind::Classical:
      return "classical:" + slopelab::to_string(center_);
    case Kind::Disk:
      return "disk:" + slopelab::to_string(center_) + ":" + slopelab::to_string(s_);
    case Kind::RankTwo:
      break;
  }
  return "rank2:" + slopelab::to_string(center_) + ":" + slopelab::to_string(s_) + (dir_ == Perturbation::Minus ? ":minus" : ":plus");
}

bool operator==(const AdicDiskPoint& a, const AdicDiskPoint& b) {
  if (a.p_ != b.p_ || a.kind_ != b.kind_) return false;
  if (a.kind_ == AdicDiskPoint::Kind::Classical) return a.center_ == b.center_;
  if (a.s_ != b.s_) return false;
  if (a.kind_ == AdicDiskPoint::Kind::RankTwo && a.dir_ != b.dir_) return false;
  Rational diff = a.center_ - b.center_;
  return diff == 0 || Rational(padic_valuation(diff, a.p_)) >= a.s_;
}

ExtValue eval_norm(const AdicDiskPoint& x, const RationalPoly& f) {
  if (is_zero_poly(f)) throw Error(ErrorKind::ZeroPolynomial, kModule, "norm of the zero polynomial");
  const long p = x.prime();
  for (const auto& c : f) require_integral(c, p);
  const auto c = taylor_shift(f, x.center());
  if (x.kind() == AdicDiskPoint::Kind::Classical) {
    return c[0] == 0 ? ExtValue::zero() : ExtValue(Rational(padic_valuation(c[0], p)), 0);
  }
  const long sign = x.kind() == AdicDiskPoint::Kind::Disk ? 0 : (x.perturbation() == AdicDiskPoint::Perturbation::Minus ? -1 : 1);
  std::optional<ExtValue> best;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const long k = static_cast<long>(i);
    ExtValue term(Rational(padic_valuation(c[i], p)) + x.radius_exponent() * k, sign * k);
    if (!best || *best < term) best = term;
  }
  return *best;
}

std::string Specialization::to_string() const { return generic ? "generic" : "closed:" + std::to_string(residue); }

Specialization specialize(const AdicDiskPoint& x) {
  const long r = residue_mod(x.center(), x.prime());
  switch (x.kind()) {
    case AdicDiskPoint::Kind::Classical:
      return {false, r};
    case AdicDiskPoint::Kind::Disk:
      if (x.radius_exponent() == 0) return {true, 0};
      return {false, r};
    case AdicDiskPoint::Kind::RankTwo:
      // at radius 1 only the downward perturbation exists, and |T - a| < 1 there
      return {false, r};
  }
  return {true, 0};
}

AdicDiskPoint max_generalization(const AdicDiskPoint& x) {
  if (x.kind() != AdicDiskPoint::Kind::RankTwo) return x;
  return AdicDiskPoint::disk(x.prime(), x.center(), x.radius_exponent());
}

bool LocallyClosed::contains(const Specialization& s, long p) const {
  if (closed) {
    bool in_v = s.generic ? vanishes_mod(*closed, p) : eval_mod(*closed, p, s.residue) == 0;
    if (!in_v) return false;
  }
  if (opens.empty()) return true;
  for (const auto& g : opens) {
    bool in_d = s.generic ? !vanishes_mod(g, p) : eval_mod(g, p, s.residue) != 0;
    if (in_d) return true;
  }
  return false;
}

std::optional<long> openness_witness(const ExtValue& v) {
  if (v.is_zero()) return 1;
  const Rational& q = v.exponent();
  if (q <= 0) return std::nullopt;
  Rational inv = 1 / q;
  long n = ceil(inv).get_si();
  if (n < 1) n = 1;
  // p^(-nq) gamma^(n eps) <= p^-1: nq > 1, or nq = 1 with n eps <= 0
  if (q * n == 1 && n * v.infinitesimal() > 0) ++n;
  return n;
}

TubeResult tube_membership(const AdicDiskPoint& x, const LocallyClosed& z) {
  const long p = x.prime();
  const bool by_sp = z.contains(specialize(x), p);

  const ExtValue one(0, 0);
  bool by_norm = true;
  std::optional<ExtValue> closed_value;
  if (z.closed) {
    closed_value = eval_norm(x, *z.closed);
    by_norm = *closed_value < one;
  }
  if (by_norm && !z.opens.empty()) {
    bool any = false;
    for (const auto& g : z.opens) any = any || eval_norm(x, g) == one;
    by_norm = any;
  }
  if (by_sp != by_norm) throw std::logic_error("tube membership: specialization and norm descriptions disagree");

  if (!by_sp || !closed_value) return {by_sp, WitnessKind::NotApplicable, 0};
  auto n = openness_witness(*closed_value);
  if (!n) return {true, WitnessKind::NoWitness, 0};
  return {true, WitnessKind::Finite, *n};
}

bool spmax_preimage_membership(const AdicDiskPoint& x, const LocallyClosed& z) {
  return tube_membership(max_generalization(x), z).in;
}

}  // namespace slopelab
