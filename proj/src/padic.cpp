#include "slopelab/padic.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "slopelab/error.hpp"

namespace slopelab {

namespace {
const char* kModule = "padic_arith";

void check_prime_match(long a, long b) {
  if (a != b) throw Error(ErrorKind::ContextMismatch, kModule, "mixing different primes");
}
}  // namespace

const Integer& prime_power(long p, long k) {
  thread_local std::map<std::pair<long, long>, Integer> cache;
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return cache.emplace(key, std::move(r)).first->second;
}

PadicNumber::PadicNumber(long p) : p_(p), val_(kExact), unit_(0), prec_(0) {}

PadicNumber PadicNumber::zero_mod(long p, long abs_prec) {
  return PadicNumber(p, std::min(abs_prec, kExact), Integer(0), 0);
}

PadicNumber PadicNumber::from_parts(long p, long val, const Integer& unit, long prec) {
  if (prec <= 0) return zero_mod(p, val);
  Integer u = unit;
  mpz_mod(u.get_mpz_t(), u.get_mpz_t(), prime_power(p, prec).get_mpz_t());
  if (u == 0 || mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p))) {
    throw Error(ErrorKind::InvalidArgument, kModule, "unit part must be prime to p");
  }
  return PadicNumber(p, val, std::move(u), prec);
}

PadicNumber PadicNumber::from_integer(long p, const Integer& n, long prec) {
  if (n == 0) return PadicNumber(p);
  Integer m = n;
  Integer pz(p);
  long v = static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
  return from_parts(p, v, m, prec);
}

PadicNumber PadicNumber::from_rational(long p, const Rational& q, long prec) {
  if (q == 0) return PadicNumber(p);
  Integer num = q.get_num();
  Integer den = q.get_den();
  Integer pz(p);
  long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
  const Integer& mod = prime_power(p, prec);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  return from_parts(p, vn - vd, num * inv, prec);
}

PadicNumber PadicNumber::power_of_p(long p, long k, long prec) { return PadicNumber(p, k, Integer(1), prec); }

long PadicNumber::valuation() const {
  if (is_zero()) throw Error(ErrorKind::PrecisionExhausted, kModule, "valuation of zero");
  return val_;
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  Integer u = prime_power(p_, prec_) - unit_;
  return PadicNumber(p_, val_, std::move(u), prec_);
}

PadicNumber& PadicNumber::operator+=(const PadicNumber& o) {
  check_prime_match(p_, o.p_);
  if (o.is_exact_zero()) return *this;
  if (is_exact_zero()) return *this = o;
  long abs = std::min(absolute_precision(), o.absolute_precision());
  if (is_zero() && o.is_zero()) return *this = zero_mod(p_, abs);
  // at least one operand is nonzero; v is the smallest nonzero valuation
  long v = is_zero() ? o.val_ : (o.is_zero() ? val_ : std::min(val_, o.val_));
  if (abs <= v) return *this = zero_mod(p_, abs);
  const Integer& mod = prime_power(p_, abs - v);
  Integer s = 0;
  auto accumulate = [&](const PadicNumber& x) {
    if (x.is_zero() || x.val_ - v >= abs - v) return;
    s += x.unit_ * prime_power(p_, x.val_ - v);
  };
  accumulate(*this);
  accumulate(o);
  mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
  if (s == 0) return *this = zero_mod(p_, abs);
  Integer pz(p_);
  long k = static_cast<long>(mpz_remove(s.get_mpz_t(), s.get_mpz_t(), pz.get_mpz_t()));
  return *this = PadicNumber(p_, v + k, std::move(s), abs - v - k);
}

PadicNumber& PadicNumber::operator-=(const PadicNumber& o) { return *this += -o; }

PadicNumber& PadicNumber::operator*=(const PadicNumber& o) {
  check_prime_match(p_, o.p_);
  if (is_exact_zero() || o.is_exact_zero()) return *this = PadicNumber(p_);
  if (is_zero() || o.is_zero()) {
    // zero bound plus the other factor's valuation (or its bound)
    return *this = zero_mod(p_, val_ + o.val_);
  }
  long prec = std::min(prec_, o.prec_);
  Integer u = unit_ * o.unit_;
  mpz_mod(u.get_mpz_t(), u.get_mpz_t(), prime_power(p_, prec).get_mpz_t());
  val_ += o.val_;
  unit_ = std::move(u);
  prec_ = prec;
  return *this;
}

PadicNumber PadicNumber::times_integer(const Integer& c) const {
  if (c == 0) return PadicNumber(p_);
  if (is_exact_zero()) return *this;
  Integer m = c;
  Integer pz(p_);
  long k = static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
  if (is_zero()) return zero_mod(p_, val_ + k);
  Integer u = unit_ * m;
  mpz_mod(u.get_mpz_t(), u.get_mpz_t(), prime_power(p_, prec_).get_mpz_t());
  return PadicNumber(p_, val_ + k, std::move(u), prec_);
}

PadicNumber PadicNumber::shifted(long k) const {
  if (is_exact_zero()) return *this;
  return PadicNumber(p_, val_ + k, unit_, prec_);
}

PadicNumber PadicNumber::inverse() const {
  if (is_exact_zero()) throw Error(ErrorKind::DivisionByZero, kModule, "inverse of zero");
  if (is_zero()) throw Error(ErrorKind::PrecisionExhausted, kModule, "inverse of an element indistinguishable from zero");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), prime_power(p_, prec_).get_mpz_t());
  return PadicNumber(p_, -val_, std::move(inv), prec_);
}

PadicNumber PadicNumber::with_absolute_precision(long abs_prec) const {
  if (abs_prec >= absolute_precision()) return *this;
  if (is_zero() || abs_prec <= val_) return zero_mod(p_, abs_prec);
  long prec = abs_prec - val_;
  Integer u = unit_;
  mpz_mod(u.get_mpz_t(), u.get_mpz_t(), prime_power(p_, prec).get_mpz_t());
  return PadicNumber(p_, val_, std::move(u), prec);
}

Rational PadicNumber::to_rational() const {
  if (is_zero()) return Rational(0);
  if (val_ >= 0) return Rational(unit_ * prime_power(p_, val_));
  Rational q(unit_, prime_power(p_, -val_));
  q.canonicalize();
  return q;
}

long PadicNumber::residue() const {
  if (is_zero()) {
    if (val_ <= 0) throw Error(ErrorKind::PrecisionExhausted, kModule, "residue of an unknown digit");
    return 0;
  }
  if (val_ < 0) throw Error(ErrorKind::InvalidArgument, kModule, "residue of a non-integral element");
  if (val_ > 0) return 0;
  return static_cast<long>(mpz_fdiv_ui(unit_.get_mpz_t(), static_cast<unsigned long>(p_)));
}

std::string PadicNumber::to_string() const {
  std::string ps = std::to_string(p_);
  if (is_exact_zero()) return "0";
  if (is_zero()) return "O(" + ps + "^" + std::to_string(val_) + ")";
  std::string s = unit_.get_str();
  if (val_ != 0) s += "*" + ps + "^" + std::to_string(val_);
  return s + " + O(" + ps + "^" + std::to_string(absolute_precision()) + ")";
}

}  // namespace slopelab
