#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace slopelab {

/// Dense polynomials over F_p, coefficients low degree first.
namespace fp_poly {
using Poly = std::vector<long>;
void trim(Poly& f);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& modulus, long p);
Poly pow_mod(Poly base, unsigned long long e, const Poly& modulus, long p);
Poly gcd(Poly a, Poly b, long p);
bool is_irreducible(const Poly& monic, long p);
/// Inverse of a modulo an irreducible modulus; a must be nonzero mod it.
Poly inverse_mod(const Poly& a, const Poly& modulus, long p);
}  // namespace fp_poly

/// Monic modulus used to build F_{p^k} and its unramified lift: a fixed
/// Conway polynomial table for p <= 7, k <= 4, otherwise the first monic
/// irreducible in lexicographic order of (c_0, ..., c_{k-1}).
std::vector<long> default_modulus(long p, int k);

/// F_{p^k} with elements encoded as integers 0..q-1 (base-p digits are the
/// coefficients in the power basis of the modulus root). Multiplication
/// goes through discrete log tables built at construction, so q is capped.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  FiniteField(long p, int k);
  FiniteField(long p, std::vector<long> modulus);

  long characteristic() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  long order() const noexcept { return q_; }
  const std::vector<long>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  /// Class of x (the modulus root); equals an integer element when k == 1.
  Elem root() const;
  Elem from_integer(long n) const;
  Elem from_coefficients(std::span<const long> coeffs) const;
  std::vector<long> coefficients(Elem a) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, unsigned long long e) const;
  Elem frobenius(Elem a) const { return pow(a, static_cast<unsigned long long>(p_)); }

  /// Quadratic character (p odd): 0, 1 or -1.
  int legendre_symbol(Elem a) const;

  /// A fixed generator of the multiplicative group.
  Elem generator() const { return generator_; }

  bool in_prime_field(Elem a) const noexcept { return a < static_cast<Elem>(p_); }

  /// "3" for prime-field elements, else "a+b*w+c*w^2" in the root w.
  std::string to_string(Elem a) const;

  static constexpr long kMaxOrder = 1L << 22;

 private:
  void build_tables();

  long p_;
  int k_;
  long q_;
  std::vector<long> modulus_;
  Elem generator_ = 1;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace slopelab
