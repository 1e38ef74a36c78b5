#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slopelab/padic.hpp"

namespace slopelab {

class UnramifiedElement;

/// The unramified extension Q_{p^h} = Q_p[x]/(m(x)) for a monic lift m of an
/// irreducible polynomial over F_p. Immutable once built; the Frobenius
/// image of the root is Hensel-lifted at construction and cached.
class UnramifiedContext {
 public:
  using Ptr = std::shared_ptr<const UnramifiedContext>;

  static Ptr make(long p, int h, long prec = kDefaultPrecision);
  static Ptr make(long p, std::vector<long> modulus, long prec = kDefaultPrecision);

  long prime() const noexcept { return p_; }
  int degree() const noexcept { return h_; }
  long precision() const noexcept { return prec_; }
  const std::vector<long>& modulus() const noexcept { return modulus_; }

  bool same_field(const UnramifiedContext& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

  /// Coefficients of sigma(x)^i in the power basis, i = 0..h-1.
  const std::vector<std::vector<PadicNumber>>& frobenius_basis() const noexcept { return sigma_basis_; }

 private:
  UnramifiedContext() = default;

  long p_ = 2;
  int h_ = 1;
  long prec_ = kDefaultPrecision;
  std::vector<long> modulus_;
  std::vector<std::vector<PadicNumber>> sigma_basis_;
};

/// Element sum_i c_i x^i of Q_{p^h}. The power basis is integral with unit
/// discriminant, so the valuation is the minimum coefficient valuation.
class UnramifiedElement {
 public:
  UnramifiedElement() = default;
  UnramifiedElement(UnramifiedContext::Ptr ctx, std::vector<PadicNumber> coeffs);

  static UnramifiedElement zero(const UnramifiedContext::Ptr& ctx);
  static UnramifiedElement one(const UnramifiedContext::Ptr& ctx);
  /// The class of x.
  static UnramifiedElement root(const UnramifiedContext::Ptr& ctx);
  static UnramifiedElement from_integer(const UnramifiedContext::Ptr& ctx, const Integer& n);
  static UnramifiedElement from_rational(const UnramifiedContext::Ptr& ctx, const Rational& q);
  static UnramifiedElement from_scalar(const UnramifiedContext::Ptr& ctx, const PadicNumber& a);
  static UnramifiedElement power_of_p(const UnramifiedContext::Ptr& ctx, long k);
  /// Lift of a residue given by its coefficients in the root's power basis.
  static UnramifiedElement lift(const UnramifiedContext::Ptr& ctx, std::span<const long> residue);

  const UnramifiedContext::Ptr& context() const noexcept { return ctx_; }
  long prime() const { return ctx_->prime(); }
  int degree() const { return ctx_->degree(); }
  const std::vector<PadicNumber>& coefficients() const noexcept { return c_; }

  bool is_zero() const;
  bool is_exact_zero() const;
  /// Valuation when determined by the known digits; nullopt for zero or
  /// when an imprecise coefficient could still lower it.
  std::optional<long> valuation() const;
  /// Smallest absolute precision among the coefficients.
  long absolute_precision() const;

  UnramifiedElement operator-() const;
  UnramifiedElement& operator+=(const UnramifiedElement& o);
  UnramifiedElement& operator-=(const UnramifiedElement& o);
  UnramifiedElement& operator*=(const UnramifiedElement& o);
  friend UnramifiedElement operator+(UnramifiedElement a, const UnramifiedElement& b) { return a += b; }
  friend UnramifiedElement operator-(UnramifiedElement a, const UnramifiedElement& b) { return a -= b; }
  friend UnramifiedElement operator*(UnramifiedElement a, const UnramifiedElement& b) { return a *= b; }

  UnramifiedElement times_scalar(const PadicNumber& a) const;
  UnramifiedElement times_integer(const Integer& n) const;
  UnramifiedElement shifted(long k) const;
  UnramifiedElement pow(unsigned long long e) const;

  /// Throws DivisionByZero for exact zero, PrecisionExhausted otherwise.
  UnramifiedElement inverse() const;

  /// Arithmetic Frobenius sigma, a ring automorphism with sigma(a) = a^p mod p.
  UnramifiedElement frobenius() const;
  /// sigma^k for k >= 0 (reduced modulo h).
  UnramifiedElement frobenius(long k) const;

  bool equals_to_precision(const UnramifiedElement& o) const { return (*this - o).is_zero(); }

  /// Reduction modulo p (coefficients in F_p); requires valuation >= 0.
  std::vector<long> residue() const;

  bool is_scalar() const;

  std::string to_string() const;

 private:
  void check_context(const UnramifiedElement& o) const;

  UnramifiedContext::Ptr ctx_;
  std::vector<PadicNumber> c_;
};

/// Teichmuller representative of a residue of F_{p^h}: the unique root of
/// X^(p^h) = X reducing to it.
UnramifiedElement teichmuller(const UnramifiedContext::Ptr& ctx, std::span<const long> residue);

/// Hensel lift of a simple root of an integral polynomial (coefficients low
/// degree first) starting from an approximation that is a root mod p.
UnramifiedElement hensel_root(const std::vector<UnramifiedElement>& poly, UnramifiedElement approx);

/// Embedding of Q_{p^a} into Q_{p^b} for a dividing b, fixed by a Hensel
/// lift of a residue root of the smaller modulus. It commutes with sigma
/// because the Frobenius lift is unique.
class FieldEmbedding {
 public:
  FieldEmbedding(UnramifiedContext::Ptr from, UnramifiedContext::Ptr to);

  const UnramifiedContext::Ptr& source() const noexcept { return from_; }
  const UnramifiedContext::Ptr& target() const noexcept { return to_; }

  UnramifiedElement operator()(const UnramifiedElement& x) const;

 private:
  UnramifiedContext::Ptr from_;
  UnramifiedContext::Ptr to_;
  std::vector<UnramifiedElement> root_powers_;
};

}  // namespace slopelab
