#pragma once

#include <cstddef>
#include <vector>

#include "slopelab/matrix.hpp"
#include "slopelab/np_calculus.hpp"

namespace slopelab {

/// A sigma^k-semilinear bijection phi of K^n, K = Q_{p^a}, stored by the
/// matrix A with phi(v) = A sigma^k(v). Ordinary isocrystals have k = 1;
/// larger k arise as powers phi^k.
class Isocrystal {
 public:
  explicit Isocrystal(Matrix frobenius, long sigma_power = 1);

  const Matrix& matrix() const noexcept { return a_; }
  const UnramifiedContext::Ptr& context() const noexcept { return a_.context(); }
  long prime() const { return context()->prime(); }
  int base_degree() const { return context()->degree(); }
  std::size_t rank() const noexcept { return a_.rows(); }
  long sigma_power() const noexcept { return k_; }

  /// Number m of iterates after which phi^m is K-linear.
  long linearization_steps() const;
  /// Matrix of the linear map phi^m.
  Matrix linearized() const;

  /// phi^j as a sigma^(jk)-semilinear map.
  Isocrystal power(long j) const;

  /// The same phi after extending scalars along an embedding of K.
  Isocrystal base_change(const FieldEmbedding& embedding) const;

 private:
  Matrix a_;
  long k_;
};

/// Isocrystal together with its monodromy N (a K-linear matrix).
struct PhiNModule {
  Isocrystal phi;
  Matrix n;
};

/// Fil^i = span for index_{j-1} < i <= index_j; the first span is the
/// whole space and the last one is zero.
struct FiltrationStep {
  long index;
  std::vector<std::vector<UnramifiedElement>> span;
};

struct FilteredModule {
  PhiNModule module;
  std::vector<FiltrationStep> filtration;
};

/// Throws InvalidArgument unless the filtration is exhaustive, separated
/// and decreasing with strictly increasing indices.
void validate_filtration(const FilteredModule& f);

/// Digits of precision the slope computation is expected to need.
long required_precision(std::size_t rank, long steps, long max_abs_valuation);

/// Valuations of the roots of c_0 + c_1 t + ... + c_n t^n, ascending, read
/// off the lower convex hull. Throws PrecisionExhausted if an imprecise
/// coefficient could touch the hull and SingularFrobenius if c_0 = 0.
SlopeMultiset root_valuations(const std::vector<UnramifiedElement>& coeffs);

SlopeMultiset newton_slopes(const Isocrystal& m);

/// Q_p<phi>/(phi^h - p^d): rank h over F_p with phi(e_i) = e_{i+1} and
/// phi(e_h) = p^d e_1. Throws NotLowestTerms unless gcd(d, h) = 1, h > 0.
Isocrystal simple_isocrystal(long p, long d, long h);
Isocrystal simple_isocrystal(long p, const Rational& lambda);

/// phi(e_i) = p^(-d floor(i/h)) e_{i+1} cyclically; slopes are -lambda.
Isocrystal b_lambda_matrix(long p, long d, long h);
Isocrystal b_lambda_matrix(long p, const Rational& lambda);

/// True iff N is nilpotent and N A = p A sigma(N) to working precision.
bool validate_phi_n(const PhiNModule& m);

struct DMComponent {
  Rational slope;
  long multiplicity;  // copies of the simple object of this slope
  friend bool operator==(const DMComponent&, const DMComponent&) = default;
};

std::vector<DMComponent> dm_class(const Isocrystal& m);

/// Block-diagonal sum of isocrystals over the same field.
Isocrystal direct_sum(const Isocrystal& a, const Isocrystal& b);

/// phi tensor phi' on the tensor product of the underlying spaces.
Isocrystal tensor_product(const Isocrystal& a, const Isocrystal& b);

}  // namespace slopelab
