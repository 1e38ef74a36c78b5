#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "slopelab/matrix.hpp"

namespace slopelab {

/// D_lambda = sum_{i<h} Q_{p^h} Pi^i with Pi a = sigma(a) Pi and Pi^h = p^d,
/// for lambda = d/h in lowest terms.
class DLambdaContext {
 public:
  using Ptr = std::shared_ptr<const DLambdaContext>;

  /// Throws NotLowestTerms unless gcd(d, h) = 1 and h > 0.
  static Ptr make(long p, long d, long h, long prec = kDefaultPrecision);

  long prime() const noexcept { return p_; }
  long d() const noexcept { return d_; }
  long h() const noexcept { return h_; }
  Rational lambda() const { return make_rational(d_, h_); }
  const UnramifiedContext::Ptr& field() const noexcept { return field_; }
  /// Q_p at the same precision, for coordinates.
  const UnramifiedContext::Ptr& base() const noexcept { return base_; }

 private:
  DLambdaContext() = default;
  long p_ = 2, d_ = 0, h_ = 1;
  UnramifiedContext::Ptr field_;
  UnramifiedContext::Ptr base_;
};

/// sum_i a_i Pi^i with coefficients on the left, Pi-degree below h.
class DLambdaElement {
 public:
  DLambdaElement() = default;
  DLambdaElement(DLambdaContext::Ptr ctx, std::vector<UnramifiedElement> coeffs);

  static DLambdaElement zero(const DLambdaContext::Ptr& ctx);
  static DLambdaElement one(const DLambdaContext::Ptr& ctx);
  static DLambdaElement pi(const DLambdaContext::Ptr& ctx);
  /// a Pi^i for 0 <= i < h.
  static DLambdaElement monomial(const DLambdaContext::Ptr& ctx, const UnramifiedElement& a, long i);

  const DLambdaContext::Ptr& context() const noexcept { return ctx_; }
  const std::vector<UnramifiedElement>& coefficients() const noexcept { return c_; }

  DLambdaElement operator+(const DLambdaElement& o) const;
  DLambdaElement operator-(const DLambdaElement& o) const;
  DLambdaElement operator*(const DLambdaElement& o) const;

  bool is_zero() const;
  bool equals_to_precision(const DLambdaElement& o) const { return (*this - o).is_zero(); }

  /// Coordinates over Q_p in the basis x^k Pi^i, index i*h + k.
  std::vector<UnramifiedElement> coordinates() const;
  static DLambdaElement from_coordinates(const DLambdaContext::Ptr& ctx, const std::vector<UnramifiedElement>& coords);

  std::string to_string() const;

  /// Throws ContextMismatch unless both live in the same D_lambda.
  void require_same_algebra(const DLambdaElement& o) const;

 private:
  DLambdaContext::Ptr ctx_;
  std::vector<UnramifiedElement> c_;
};

DLambdaElement dl_mul(const DLambdaElement& x, const DLambdaElement& y);

/// Two-sided inverse by solving the h^2 x h^2 system of left multiplication
/// over Q_p. Throws NotInvertibleAtPrecision.
DLambdaElement dl_inverse(const DLambdaElement& x);

/// Q_{p^h}<F>/(F^h - p^-d) against D_{-lambda} under F -> Pi: products of
/// all basis monomials agree. The F side multiplies skew polynomials and
/// reduces by the central relation afterwards.
bool f_to_pi_check(long p, long d, long h, long prec = kDefaultPrecision);

/// D_lambda against D_{lambda+1} under Pi -> p^-1 Pi'.
bool lambda_shift_check(long p, long d, long h, long prec = kDefaultPrecision);

/// h x h matrices over Q_{p^h} of left multiplication on D_lambda, a right
/// Q_{p^h}-space with basis v_i = Pi^-i.
struct SplittingRep {
  DLambdaContext::Ptr ctx;
  Matrix pi;

  /// diag(a, sigma(a), ..., sigma^(h-1)(a)).
  Matrix field_image(const UnramifiedElement& a) const;
  Matrix operator()(const DLambdaElement& x) const;
};

SplittingRep splitting_rep(const DLambdaContext::Ptr& ctx);

/// Rank over Q_{p^h} of the span of the images of the h^2 basis monomials.
std::size_t monomial_image_rank(const SplittingRep& rep);

/// Dimension over Q_p of the elements commuting with Pi and with the
/// generator of Q_{p^h}.
std::size_t centralizer_dimension(const DLambdaContext::Ptr& ctx);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// The property suite behind `slopelab dlambda ... check`.
std::vector<CheckResult> run_dlambda_checks(const DLambdaContext::Ptr& ctx, std::uint64_t seed, int samples = 20);

}  // namespace slopelab
