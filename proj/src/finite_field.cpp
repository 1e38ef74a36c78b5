#include "slopelab/finite_field.hpp"

#include <algorithm>
#include <map>

#include "slopelab/error.hpp"
#include "slopelab/rational.hpp"

namespace slopelab {

namespace {
const char* kModule = "finite_field";

long mod(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = mod(a, p);
  while (nr != 0) {
    long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  return mod(t, p);
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}
}  // namespace

namespace fp_poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

namespace {
Poly rem(Poly a, const Poly& m, long p) {
  trim(a);
  long lead_inv = inv_mod(m.back(), p);
  std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    long c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}
}  // namespace

Poly mul_mod(const Poly& a, const Poly& b, const Poly& modulus, long p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return rem(std::move(c), modulus, p);
}

Poly pow_mod(Poly base, unsigned long long e, const Poly& modulus, long p) {
  Poly result = rem(Poly{1}, modulus, p);
  base = rem(std::move(base), modulus, p);
  while (e) {
    if (e & 1ULL) result = mul_mod(result, base, modulus, p);
    e >>= 1ULL;
    if (e) base = mul_mod(base, base, modulus, p);
  }
  return result;
}

Poly gcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long li = inv_mod(a.back(), p);
    for (auto& c : a) c = c * li % p;
  }
  return a;
}

Poly inverse_mod(const Poly& a, const Poly& modulus, long p) {
  // extended Euclid tracking only the coefficient of a
  Poly r0 = modulus, r1 = rem(a, modulus, p);
  Poly t0{}, t1{1};
  while (!r1.empty()) {
    Poly q;
    Poly r = r0;
    long lead_inv = inv_mod(r1.back(), p);
    std::size_t d1 = r1.size() - 1;
    if (r.size() >= r1.size()) q.assign(r.size() - d1, 0);
    while (r.size() > d1) {
      long c = r.back() * lead_inv % p;
      std::size_t shift = r.size() - 1 - d1;
      q[shift] = c;
      for (std::size_t i = 0; i <= d1; ++i) r[shift + i] = mod(r[shift + i] - c * r1[i], p);
      trim(r);
    }
    // t2 = t0 - q * t1
    Poly qt(q.size() + t1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < t1.size(); ++j) qt[i + j] = (qt[i + j] + q[i] * t1[j]) % p;
    }
    Poly t2(std::max(t0.size(), qt.size()), 0);
    for (std::size_t i = 0; i < t2.size(); ++i) {
      long x = (i < t0.size() ? t0[i] : 0) - (i < qt.size() ? qt[i] : 0);
      t2[i] = mod(x, p);
    }
    trim(t2);
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw Error(ErrorKind::DivisionByZero, kModule, "polynomial not invertible modulo the modulus");
  long c = inv_mod(r0[0], p);
  for (auto& x : t0) x = x * c % p;
  return rem(t0, modulus, p);
}

bool is_irreducible(const Poly& monic, long p) {
  int k = static_cast<int>(monic.size()) - 1;
  if (k <= 0) return false;
  if (k == 1) return true;
  // Rabin: x^(p^k) = x mod f, and gcd(x^(p^(k/l)) - x, f) = 1 for primes l | k
  auto x_pow_p_pow = [&](int i) {
    Poly r{0, 1};
    for (int j = 0; j < i; ++j) r = pow_mod(r, static_cast<unsigned long long>(p), monic, p);
    return r;
  };
  Poly full = x_pow_p_pow(k);
  Poly x = rem(Poly{0, 1}, monic, p);
  trim(full);
  if (full != x) return false;
  for (long l : prime_factors(k)) {
    Poly t = x_pow_p_pow(k / static_cast<int>(l));
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = mod(t[1] - 1, p);
    trim(t);
    Poly g = gcd(t, monic, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace fp_poly

std::vector<long> default_modulus(long p, int k) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, kModule, "characteristic must be prime");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, kModule, "degree must be positive");
  // Conway polynomials, coefficients c_0..c_{k-1} of the monic modulus
  static const std::map<std::pair<long, int>, std::vector<long>> kConway = {
      {{2, 1}, {1}},          {{2, 2}, {1, 1}},          {{2, 3}, {1, 1, 0}},    {{2, 4}, {1, 1, 0, 0}},
      {{3, 1}, {1}},          {{3, 2}, {2, 2}},          {{3, 3}, {1, 2, 0}},    {{3, 4}, {2, 0, 0, 2}},
      {{5, 1}, {3}},          {{5, 2}, {2, 4}},          {{5, 3}, {3, 3, 0}},    {{5, 4}, {2, 4, 4, 0}},
      {{7, 1}, {4}},          {{7, 2}, {3, 6}},          {{7, 3}, {4, 0, 6}},    {{7, 4}, {3, 4, 5, 0}},
  };
  if (auto it = kConway.find({p, k}); it != kConway.end()) {
    std::vector<long> m = it->second;
    m.push_back(1);
    return m;
  }
  if (k == 1) return {0, 1};
  // lexicographic search over (c_0, ..., c_{k-1}), c_0 varying fastest
  std::vector<long> m(static_cast<std::size_t>(k) + 1, 0);
  m[static_cast<std::size_t>(k)] = 1;
  while (true) {
    if (m[0] != 0 && fp_poly::is_irreducible(m, p)) return m;
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(k)) {
      if (++m[i] < p) break;
      m[i++] = 0;
    }
    if (i == static_cast<std::size_t>(k)) break;
  }
  throw Error(ErrorKind::InvalidArgument, kModule, "no irreducible modulus found");
}

FiniteField::FiniteField(long p, int k) : FiniteField(p, default_modulus(p, k)) {}

FiniteField::FiniteField(long p, std::vector<long> modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, kModule, "characteristic must be prime");
  for (auto& c : modulus_) c = mod(c, p);
  fp_poly::trim(modulus_);
  if (modulus_.size() < 2 || modulus_.back() != 1) {
    throw Error(ErrorKind::InvalidArgument, kModule, "modulus must be monic of positive degree");
  }
  k_ = static_cast<int>(modulus_.size()) - 1;
  if (!fp_poly::is_irreducible(modulus_, p)) {
    throw Error(ErrorKind::InvalidArgument, kModule, "modulus is reducible");
  }
  long q = 1;
  for (int i = 0; i < k_; ++i) {
    if (q > kMaxOrder / p) throw Error(ErrorKind::InvalidArgument, kModule, "field too large for table arithmetic");
    q *= p;
  }
  q_ = q;
  build_tables();
}

std::vector<long> FiniteField::coefficients(Elem a) const {
  std::vector<long> c(static_cast<std::size_t>(k_), 0);
  for (int i = 0; i < k_; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<long>(a % static_cast<Elem>(p_));
    a /= static_cast<Elem>(p_);
  }
  return c;
}

FiniteField::Elem FiniteField::from_coefficients(std::span<const long> coeffs) const {
  // reduce modulo the modulus first so any polynomial is accepted
  fp_poly::Poly f(coeffs.begin(), coeffs.end());
  for (auto& c : f) c = mod(c, p_);
  fp_poly::Poly r = fp_poly::mul_mod(f, fp_poly::Poly{1}, modulus_, p_);
  Elem e = 0;
  for (std::size_t i = r.size(); i-- > 0;) e = e * static_cast<Elem>(p_) + static_cast<Elem>(r[i]);
  return e;
}

FiniteField::Elem FiniteField::from_integer(long n) const { return static_cast<Elem>(mod(n, p_)); }

FiniteField::Elem FiniteField::root() const {
  std::vector<long> x{0, 1};
  return from_coefficients(x);
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  Elem r = 0, scale = 1;
  for (int i = 0; i < k_; ++i) {
    Elem d = (a % p_ + b % p_) % static_cast<Elem>(p_);
    r += d * scale;
    scale *= static_cast<Elem>(p_);
    a /= static_cast<Elem>(p_);
    b /= static_cast<Elem>(p_);
  }
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  Elem r = 0, scale = 1;
  for (int i = 0; i < k_; ++i) {
    Elem d = a % static_cast<Elem>(p_);
    r += ((static_cast<Elem>(p_) - d) % static_cast<Elem>(p_)) * scale;
    scale *= static_cast<Elem>(p_);
    a /= static_cast<Elem>(p_);
  }
  return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
  return exp_[s % static_cast<std::uint64_t>(q_ - 1)];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, kModule, "inverse of zero in a finite field");
  std::uint64_t n = static_cast<std::uint64_t>(q_ - 1);
  return exp_[(n - log_[a]) % n];
}

FiniteField::Elem FiniteField::pow(Elem a, unsigned long long e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t n = static_cast<std::uint64_t>(q_ - 1);
  return exp_[static_cast<std::size_t>((static_cast<unsigned __int128>(log_[a]) * e) % n)];
}

int FiniteField::legendre_symbol(Elem a) const {
  if (a == 0) return 0;
  return (log_[a] % 2 == 0) ? 1 : -1;
}

std::string FiniteField::to_string(Elem a) const {
  if (in_prime_field(a)) return std::to_string(a);
  auto c = coefficients(a);
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += (i == 1) ? "w" : "w^" + std::to_string(i);
    }
  }
  return out;
}

void FiniteField::build_tables() {
  auto poly_of = [&](Elem a) {
    auto c = coefficients(a);
    fp_poly::Poly f(c.begin(), c.end());
    fp_poly::trim(f);
    return f;
  };
  auto elem_of = [&](const fp_poly::Poly& f) { return from_coefficients(f); };
  auto slow_pow = [&](Elem a, unsigned long long e) { return elem_of(fp_poly::pow_mod(poly_of(a), e, modulus_, p_)); };

  unsigned long long n = static_cast<unsigned long long>(q_ - 1);
  auto factors = prime_factors(static_cast<long>(n));
  for (Elem g = 1; g < static_cast<Elem>(q_); ++g) {
    if (n == 1 || std::all_of(factors.begin(), factors.end(), [&](long l) {
          return slow_pow(g, n / static_cast<unsigned long long>(l)) != 1;
        })) {
      generator_ = g;
      break;
    }
  }
  exp_.assign(static_cast<std::size_t>(n), 0);
  log_.assign(static_cast<std::size_t>(q_), 0);
  fp_poly::Poly gp = poly_of(generator_);
  fp_poly::Poly cur{1};
  for (std::size_t i = 0; i < n; ++i) {
    Elem e = elem_of(cur);
    exp_[i] = e;
    log_[e] = static_cast<std::uint32_t>(i);
    cur = fp_poly::mul_mod(cur, gp, modulus_, p_);
  }
}

}  // namespace slopelab
