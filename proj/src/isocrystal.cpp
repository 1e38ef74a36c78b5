#include "slopelab/isocrystal.hpp"

#include <algorithm>
#include <numeric>

#include "slopelab/error.hpp"

namespace slopelab {

namespace {

const char* kModule = "isocrystals";

long max_abs_valuation(const Matrix& a) {
  long m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (auto v = a(i, j).valuation()) m = std::max(m, std::labs(*v));
  return m;
}

UnramifiedContext::Ptr context_for(long p, long h, long d) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, kModule, "p must be prime");
  if (h <= 0 || std::gcd(d, h) != 1) {
    throw Error(ErrorKind::NotLowestTerms, kModule,
                std::to_string(d) + "/" + std::to_string(h) + " is not in lowest terms with positive denominator");
  }
  return UnramifiedContext::make(p, 1, std::max(kDefaultPrecision, required_precision(static_cast<std::size_t>(h), 1, std::labs(d))));
}

Matrix cyclic_shift(const UnramifiedContext::Ptr& ctx, long h, const UnramifiedElement& wrap) {
  Matrix a(ctx, static_cast<std::size_t>(h), static_cast<std::size_t>(h));
  for (long i = 0; i + 1 < h; ++i) a(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = UnramifiedElement::one(ctx);
  a(0, static_cast<std::size_t>(h - 1)) = wrap;
  return a;
}

}  // namespace

Isocrystal::Isocrystal(Matrix frobenius, long sigma_power) : a_(std::move(frobenius)), k_(sigma_power) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) throw Error(ErrorKind::SizeMismatch, kModule, "Frobenius matrix must be square and nonempty");
  if (k_ < 0) throw Error(ErrorKind::InvalidArgument, kModule, "negative Frobenius twist");
}

long Isocrystal::linearization_steps() const {
  long a = base_degree();
  return a / std::gcd(a, k_ % a);
}

Matrix Isocrystal::linearized() const {
  Matrix f = a_;
  for (long j = 1; j < linearization_steps(); ++j) f = f * a_.frobenius(j * k_);
  return f;
}

Isocrystal Isocrystal::power(long j) const {
  if (j < 1) throw Error(ErrorKind::InvalidArgument, kModule, "power must be positive");
  Matrix f = a_;
  for (long i = 1; i < j; ++i) f = f * a_.frobenius(i * k_);
  return Isocrystal(std::move(f), j * k_);
}

Isocrystal Isocrystal::base_change(const FieldEmbedding& embedding) const {
  Matrix b(embedding.target(), rank(), rank());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) b(i, j) = embedding(a_(i, j));
  return Isocrystal(std::move(b), k_);
}

long required_precision(std::size_t rank, long steps, long max_abs_valuation) {
  return steps * static_cast<long>(rank) * (1 + max_abs_valuation) + 8;
}

SlopeMultiset root_valuations(const std::vector<UnramifiedElement>& coeffs) {
  if (coeffs.size() < 2) throw Error(ErrorKind::InvalidArgument, kModule, "polynomial of positive degree required");
  const std::size_t n = coeffs.size() - 1;
  if (coeffs[0].is_exact_zero()) throw Error(ErrorKind::SingularFrobenius, kModule, "constant coefficient is zero");
  if (!coeffs[0].valuation()) throw Error(ErrorKind::PrecisionExhausted, kModule, "constant coefficient is zero to working precision");
  if (!coeffs[n].valuation()) throw Error(ErrorKind::PrecisionExhausted, kModule, "leading coefficient is zero to working precision");

  // Abscissa x = n - i puts the leading term first, so hull slopes are root valuations.
  struct Pt {
    long x;
    long y;
  };
  std::vector<Pt> hull;
  for (std::size_t x = 0; x <= n; ++x) {
    auto v = coeffs[n - x].valuation();
    if (!v) continue;
    Pt q{static_cast<long>(x), *v};
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // drop b when it lies on or above the segment a-q
      if ((b.y - a.y) * (q.x - a.x) >= (q.y - a.y) * (b.x - a.x)) hull.pop_back();
      else break;
    }
    hull.push_back(q);
  }

  auto hull_at = [&](long x) -> Rational {
    for (std::size_t k = 1; k < hull.size(); ++k) {
      if (x <= hull[k].x) {
        const Pt& a = hull[k - 1];
        const Pt& b = hull[k];
        return Rational(a.y) + Rational(b.y - a.y, b.x - a.x) * Rational(x - a.x);
      }
    }
    return Rational(hull.back().y);
  };
  for (std::size_t x = 1; x < n; ++x) {
    const auto& c = coeffs[n - x];
    if (c.valuation() || c.is_exact_zero()) continue;
    if (Rational(c.absolute_precision()) <= hull_at(static_cast<long>(x))) {
      throw Error(ErrorKind::PrecisionExhausted, kModule,
                  "coefficient of t^" + std::to_string(n - x) + " is too imprecise to fix the Newton polygon");
    }
  }

  std::vector<Rational> out;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    Rational s(hull[k].y - hull[k - 1].y, hull[k].x - hull[k - 1].x);
    s.canonicalize();
    for (long i = hull[k - 1].x; i < hull[k].x; ++i) out.push_back(s);
  }
  return SlopeMultiset(std::move(out));
}

SlopeMultiset newton_slopes(const Isocrystal& m) {
  const long steps = m.linearization_steps();
  auto cp = characteristic_polynomial(m.linearized());
  if (!cp[0].valuation() && !cp[0].is_exact_zero() && rank(m.matrix()) < m.rank()) {
    throw Error(ErrorKind::SingularFrobenius, kModule, "Frobenius matrix is singular");
  }
  try {
    auto roots = root_valuations(cp);
    std::vector<Rational> s;
    for (const auto& r : roots.slopes()) {
      Rational q = r / steps;
      q.canonicalize();
      s.push_back(q);
    }
    return SlopeMultiset(std::move(s));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PrecisionExhausted) {
      long need = required_precision(m.rank(), steps, max_abs_valuation(m.matrix()));
      throw Error(e.kind(), kModule,
                  std::string(e.what()) + " (precision " + std::to_string(m.context()->precision()) +
                      ", suggested at least " + std::to_string(need) + ")");
    }
    throw;
  }
}

Isocrystal simple_isocrystal(long p, long d, long h) {
  auto ctx = context_for(p, h, d);
  return Isocrystal(cyclic_shift(ctx, h, UnramifiedElement::power_of_p(ctx, d)));
}

Isocrystal simple_isocrystal(long p, const Rational& lambda) {
  return simple_isocrystal(p, lambda.get_num().get_si(), lambda.get_den().get_si());
}

Isocrystal b_lambda_matrix(long p, long d, long h) {
  auto ctx = context_for(p, h, d);
  return Isocrystal(cyclic_shift(ctx, h, UnramifiedElement::power_of_p(ctx, -d)));
}

Isocrystal b_lambda_matrix(long p, const Rational& lambda) {
  return b_lambda_matrix(p, lambda.get_num().get_si(), lambda.get_den().get_si());
}

bool validate_phi_n(const PhiNModule& m) {
  const Matrix& a = m.phi.matrix();
  const Matrix& n = m.n;
  if (n.rows() != a.rows() || n.cols() != a.cols() || !n.context()->same_field(*a.context())) return false;
  Matrix power = n;
  for (std::size_t i = 1; i < n.rows(); ++i) power = power * n;
  if (!power.is_zero()) return false;
  auto p = UnramifiedElement::from_integer(a.context(), m.phi.prime());
  return (n * a).equals_to_precision((a * n.frobenius(m.phi.sigma_power())).times_scalar(p));
}

std::vector<DMComponent> dm_class(const Isocrystal& m) {
  std::vector<DMComponent> out;
  const auto slopes = newton_slopes(m);
  for (const auto& s : slopes.slopes()) {
    if (out.empty() || out.back().slope != s) out.push_back({s, 0});
    ++out.back().multiplicity;
  }
  for (auto& c : out) {
    long h = c.slope.get_den().get_si();
    if (c.multiplicity % h != 0) {
      throw Error(ErrorKind::PrecisionExhausted, kModule, "slope multiplicity not divisible by its denominator");
    }
    c.multiplicity /= h;
  }
  return out;
}

Isocrystal direct_sum(const Isocrystal& a, const Isocrystal& b) {
  if (!a.context()->same_field(*b.context()) || a.sigma_power() != b.sigma_power()) {
    throw Error(ErrorKind::ContextMismatch, kModule, "direct sum needs a common base and twist");
  }
  std::size_t n = a.rank(), r = b.rank();
  Matrix s(a.context(), n + r, n + r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = a.matrix()(i, j);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) s(n + i, n + j) = b.matrix()(i, j);
  return Isocrystal(std::move(s), a.sigma_power());
}

Isocrystal tensor_product(const Isocrystal& a, const Isocrystal& b) {
  if (a.sigma_power() != b.sigma_power()) throw Error(ErrorKind::ContextMismatch, kModule, "tensor product needs a common twist");
  return Isocrystal(kronecker(a.matrix(), b.matrix()), a.sigma_power());
}

namespace {

std::size_t span_rank(const std::vector<std::vector<UnramifiedElement>>& vectors, const UnramifiedContext::Ptr& ctx,
                      std::size_t n) {
  if (vectors.empty()) return 0;
  Matrix m(ctx, n, vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != n) throw Error(ErrorKind::SizeMismatch, kModule, "filtration vector has wrong length");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = vectors[j][i];
  }
  return rank(m);
}

}  // namespace

void validate_filtration(const FilteredModule& f) {
  const auto& steps = f.filtration;
  const auto& ctx = f.module.phi.context();
  const std::size_t n = f.module.phi.rank();
  if (steps.size() < 2) throw Error(ErrorKind::InvalidArgument, kModule, "filtration needs a first and a last step");
  if (span_rank(steps.front().span, ctx, n) != n) throw Error(ErrorKind::InvalidArgument, kModule, "filtration is not exhaustive");
  if (span_rank(steps.back().span, ctx, n) != 0) throw Error(ErrorKind::InvalidArgument, kModule, "filtration is not separated");
  for (std::size_t j = 1; j < steps.size(); ++j) {
    if (steps[j].index <= steps[j - 1].index) throw Error(ErrorKind::InvalidArgument, kModule, "filtration indices must increase");
    auto both = steps[j - 1].span;
    both.insert(both.end(), steps[j].span.begin(), steps[j].span.end());
    if (span_rank(both, ctx, n) != span_rank(steps[j - 1].span, ctx, n)) {
      throw Error(ErrorKind::InvalidArgument, kModule, "filtration is not decreasing");
    }
  }
}

}  // namespace slopelab
