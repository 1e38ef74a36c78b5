#include "slopelab/unramified.hpp"

#include <algorithm>

#include "slopelab/error.hpp"
#include "slopelab/finite_field.hpp"

namespace slopelab {

namespace {
const char* kModule = "padic_arith";
constexpr int kMaxNewtonSteps = 80;
}  // namespace

UnramifiedContext::Ptr UnramifiedContext::make(long p, int h, long prec) {
  return make(p, default_modulus(p, h), prec);
}

UnramifiedContext::Ptr UnramifiedContext::make(long p, std::vector<long> modulus, long prec) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, kModule, "p must be prime");
  if (prec < 1) throw Error(ErrorKind::InvalidArgument, kModule, "precision must be positive");
  for (auto& c : modulus) c = ((c % p) + p) % p;
  fp_poly::trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1 || !fp_poly::is_irreducible(modulus, p)) {
    throw Error(ErrorKind::InvalidArgument, kModule, "modulus must be monic and irreducible mod p");
  }
  std::shared_ptr<UnramifiedContext> ctx(new UnramifiedContext());
  ctx->p_ = p;
  ctx->h_ = static_cast<int>(modulus.size()) - 1;
  ctx->prec_ = prec;
  ctx->modulus_ = std::move(modulus);

  const int h = ctx->h_;
  if (h == 1) {
    ctx->sigma_basis_ = {{PadicNumber::from_integer(p, 1, prec)}};
    return ctx;
  }
  // sigma(x) is the root of the modulus congruent to x^p
  Ptr view = ctx;
  std::vector<UnramifiedElement> poly;
  for (long c : ctx->modulus_) poly.push_back(UnramifiedElement::from_integer(view, c));
  UnramifiedElement x = UnramifiedElement::root(view);
  UnramifiedElement sigma_x = hensel_root(poly, x.pow(static_cast<unsigned long long>(p)));
  std::vector<std::vector<PadicNumber>> basis;
  UnramifiedElement power = UnramifiedElement::one(view);
  for (int i = 0; i < h; ++i) {
    basis.push_back(power.coefficients());
    power *= sigma_x;
  }
  ctx->sigma_basis_ = std::move(basis);
  return ctx;
}

UnramifiedElement::UnramifiedElement(UnramifiedContext::Ptr ctx, std::vector<PadicNumber> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  if (!ctx_) throw Error(ErrorKind::InvalidArgument, kModule, "missing extension context");
  if (c_.size() != static_cast<std::size_t>(ctx_->degree())) {
    throw Error(ErrorKind::InvalidArgument, kModule, "coefficient count must equal the extension degree");
  }
  for (const auto& c : c_) {
    if (c.prime() != ctx_->prime()) throw Error(ErrorKind::ContextMismatch, kModule, "coefficient over a different prime");
  }
}

UnramifiedElement UnramifiedElement::zero(const UnramifiedContext::Ptr& ctx) {
  return UnramifiedElement(ctx, std::vector<PadicNumber>(static_cast<std::size_t>(ctx->degree()), PadicNumber(ctx->prime())));
}

UnramifiedElement UnramifiedElement::one(const UnramifiedContext::Ptr& ctx) { return from_integer(ctx, 1); }

UnramifiedElement UnramifiedElement::root(const UnramifiedContext::Ptr& ctx) {
  if (ctx->degree() == 1) return from_integer(ctx, -ctx->modulus()[0]);
  auto z = zero(ctx);
  z.c_[1] = PadicNumber::from_integer(ctx->prime(), 1, ctx->precision());
  return z;
}

UnramifiedElement UnramifiedElement::from_integer(const UnramifiedContext::Ptr& ctx, const Integer& n) {
  return from_scalar(ctx, PadicNumber::from_integer(ctx->prime(), n, ctx->precision()));
}

UnramifiedElement UnramifiedElement::from_rational(const UnramifiedContext::Ptr& ctx, const Rational& q) {
  return from_scalar(ctx, PadicNumber::from_rational(ctx->prime(), q, ctx->precision()));
}

UnramifiedElement UnramifiedElement::from_scalar(const UnramifiedContext::Ptr& ctx, const PadicNumber& a) {
  auto z = zero(ctx);
  z.c_[0] = a;
  return z;
}

UnramifiedElement UnramifiedElement::power_of_p(const UnramifiedContext::Ptr& ctx, long k) {
  return from_scalar(ctx, PadicNumber::power_of_p(ctx->prime(), k, ctx->precision()));
}

UnramifiedElement UnramifiedElement::lift(const UnramifiedContext::Ptr& ctx, std::span<const long> residue) {
  auto z = zero(ctx);
  for (std::size_t i = 0; i < residue.size() && i < z.c_.size(); ++i) {
    z.c_[i] = PadicNumber::from_integer(ctx->prime(), residue[i], ctx->precision());
  }
  return z;
}

bool UnramifiedElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const PadicNumber& c) { return c.is_zero(); });
}

bool UnramifiedElement::is_exact_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const PadicNumber& c) { return c.is_exact_zero(); });
}

std::optional<long> UnramifiedElement::valuation() const {
  std::optional<long> m;
  for (const auto& c : c_) {
    if (!c.is_zero()) m = m ? std::min(*m, c.valuation()) : c.valuation();
  }
  if (!m) return std::nullopt;
  for (const auto& c : c_) {
    if (c.is_zero() && c.absolute_precision() <= *m) return std::nullopt;
  }
  return m;
}

long UnramifiedElement::absolute_precision() const {
  long a = PadicNumber::kExact;
  for (const auto& c : c_) a = std::min(a, c.absolute_precision());
  return a;
}

void UnramifiedElement::check_context(const UnramifiedElement& o) const {
  if (ctx_ != o.ctx_ && !ctx_->same_field(*o.ctx_)) {
    throw Error(ErrorKind::ContextMismatch, kModule, "elements of different extensions");
  }
}

UnramifiedElement UnramifiedElement::operator-() const {
  UnramifiedElement r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UnramifiedElement& UnramifiedElement::operator+=(const UnramifiedElement& o) {
  check_context(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

UnramifiedElement& UnramifiedElement::operator-=(const UnramifiedElement& o) {
  check_context(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

UnramifiedElement& UnramifiedElement::operator*=(const UnramifiedElement& o) {
  check_context(o);
  const std::size_t h = c_.size();
  const long p = ctx_->prime();
  if (h == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  std::vector<PadicNumber> d(2 * h - 1, PadicNumber(p));
  for (std::size_t i = 0; i < h; ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < h; ++j) {
      if (o.c_[j].is_exact_zero()) continue;
      d[i + j] += c_[i] * o.c_[j];
    }
  }
  // x^h = -(m_0 + m_1 x + ... + m_{h-1} x^{h-1})
  const auto& m = ctx_->modulus();
  for (std::size_t k = 2 * h - 2; k >= h; --k) {
    PadicNumber t = d[k];
    d[k] = PadicNumber(p);
    if (t.is_exact_zero()) continue;
    for (std::size_t i = 0; i < h; ++i) {
      if (m[i] != 0) d[k - h + i] -= t.times_integer(m[i]);
    }
  }
  d.resize(h, PadicNumber(p));
  c_ = std::move(d);
  return *this;
}

UnramifiedElement UnramifiedElement::times_scalar(const PadicNumber& a) const {
  UnramifiedElement r = *this;
  for (auto& c : r.c_) c *= a;
  return r;
}

UnramifiedElement UnramifiedElement::times_integer(const Integer& n) const {
  UnramifiedElement r = *this;
  for (auto& c : r.c_) c = c.times_integer(n);
  return r;
}

UnramifiedElement UnramifiedElement::shifted(long k) const {
  UnramifiedElement r = *this;
  for (auto& c : r.c_) c = c.shifted(k);
  return r;
}

UnramifiedElement UnramifiedElement::pow(unsigned long long e) const {
  UnramifiedElement result = one(ctx_);
  UnramifiedElement base = *this;
  while (e) {
    if (e & 1ULL) result *= base;
    e >>= 1ULL;
    if (e) base *= base;
  }
  return result;
}

UnramifiedElement UnramifiedElement::inverse() const {
  if (is_exact_zero()) throw Error(ErrorKind::DivisionByZero, kModule, "inverse of zero");
  auto v = valuation();
  if (!v) throw Error(ErrorKind::PrecisionExhausted, kModule, "inverse of an element with undetermined valuation");
  const long p = ctx_->prime();
  if (ctx_->degree() == 1) return from_scalar(ctx_, c_[0].inverse());
  UnramifiedElement unit = shifted(-*v);
  fp_poly::Poly bar = unit.residue();
  fp_poly::trim(bar);
  fp_poly::Poly inv_bar = fp_poly::inverse_mod(bar, ctx_->modulus(), p);
  UnramifiedElement x = lift(ctx_, inv_bar);
  const UnramifiedElement two = from_integer(ctx_, 2);
  // Newton: x <- x (2 - u x), doubling the correct digits each step
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    UnramifiedElement e = one(ctx_) - unit * x;
    if (e.is_zero()) break;
    x = x * (two - unit * x);
  }
  long abs = unit.absolute_precision();
  for (auto& c : x.c_) c = c.with_absolute_precision(abs);
  return x.shifted(-*v);
}

UnramifiedElement UnramifiedElement::frobenius() const {
  if (ctx_->degree() == 1) return *this;
  const auto& basis = ctx_->frobenius_basis();
  std::vector<PadicNumber> out(c_.size(), PadicNumber(ctx_->prime()));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (!basis[i][j].is_exact_zero()) out[j] += c_[i] * basis[i][j];
    }
  }
  return UnramifiedElement(ctx_, std::move(out));
}

UnramifiedElement UnramifiedElement::frobenius(long k) const {
  const long h = ctx_->degree();
  k = ((k % h) + h) % h;
  UnramifiedElement r = *this;
  for (long i = 0; i < k; ++i) r = r.frobenius();
  return r;
}

std::vector<long> UnramifiedElement::residue() const {
  std::vector<long> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(c.residue());
  return out;
}

bool UnramifiedElement::is_scalar() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const PadicNumber& c) { return c.is_zero(); });
}

std::string UnramifiedElement::to_string() const {
  if (c_.size() == 1) return c_[0].to_string();
  std::string out = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ", ";
    out += c_[i].to_string();
  }
  return out + "]";
}

UnramifiedElement hensel_root(const std::vector<UnramifiedElement>& poly, UnramifiedElement approx) {
  if (poly.empty()) throw Error(ErrorKind::InvalidArgument, kModule, "empty polynomial");
  const auto& ctx = approx.context();
  auto eval = [&](const std::vector<UnramifiedElement>& f, const UnramifiedElement& x) {
    UnramifiedElement acc = UnramifiedElement::zero(ctx);
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
  };
  std::vector<UnramifiedElement> deriv;
  for (std::size_t i = 1; i < poly.size(); ++i) deriv.push_back(poly[i].times_integer(static_cast<long>(i)));
  if (deriv.empty()) throw Error(ErrorKind::InvalidArgument, kModule, "constant polynomial has no root");
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    UnramifiedElement value = eval(poly, approx);
    if (value.is_zero()) return approx;
    approx -= value * eval(deriv, approx).inverse();
  }
  throw Error(ErrorKind::PrecisionExhausted, kModule, "Hensel lifting did not converge");
}

UnramifiedElement teichmuller(const UnramifiedContext::Ptr& ctx, std::span<const long> residue) {
  UnramifiedElement x = UnramifiedElement::lift(ctx, residue);
  if (std::all_of(residue.begin(), residue.end(), [&](long c) { return c % ctx->prime() == 0; })) {
    return UnramifiedElement::zero(ctx);
  }
  Integer q = prime_power(ctx->prime(), ctx->degree());
  unsigned long long qq = q.get_ui();
  const UnramifiedElement one = UnramifiedElement::one(ctx);
  // Newton on X^q - X, derivative q X^(q-1) - 1 is a unit
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    UnramifiedElement xq1 = x.pow(qq - 1);
    UnramifiedElement value = x * xq1 - x;
    if (value.is_zero()) return x;
    UnramifiedElement deriv = xq1.times_integer(q) - one;
    x -= value * deriv.inverse();
  }
  throw Error(ErrorKind::PrecisionExhausted, kModule, "Teichmuller lift did not converge");
}

FieldEmbedding::FieldEmbedding(UnramifiedContext::Ptr from, UnramifiedContext::Ptr to)
    : from_(std::move(from)), to_(std::move(to)) {
  if (from_->prime() != to_->prime() || to_->degree() % from_->degree() != 0) {
    throw Error(ErrorKind::ContextMismatch, kModule, "no embedding between these unramified fields");
  }
  FiniteField big(to_->prime(), to_->modulus());
  const auto& m = from_->modulus();
  std::optional<FiniteField::Elem> residue_root;
  for (long e = 0; e < big.order() && !residue_root; ++e) {
    auto z = static_cast<FiniteField::Elem>(e);
    FiniteField::Elem acc = big.zero();
    for (std::size_t i = m.size(); i-- > 0;) acc = big.add(big.mul(acc, z), big.from_integer(m[i]));
    if (acc == big.zero()) residue_root = z;
  }
  if (!residue_root) throw Error(ErrorKind::ContextMismatch, kModule, "modulus has no root in the target field");
  std::vector<UnramifiedElement> poly;
  for (long c : m) poly.push_back(UnramifiedElement::from_integer(to_, c));
  auto r = hensel_root(poly, UnramifiedElement::lift(to_, big.coefficients(*residue_root)));
  auto power = UnramifiedElement::one(to_);
  for (int i = 0; i < from_->degree(); ++i) {
    root_powers_.push_back(power);
    power *= r;
  }
}

UnramifiedElement FieldEmbedding::operator()(const UnramifiedElement& x) const {
  if (!x.context()->same_field(*from_)) throw Error(ErrorKind::ContextMismatch, kModule, "element outside the source field");
  auto acc = UnramifiedElement::zero(to_);
  for (std::size_t i = 0; i < root_powers_.size(); ++i) acc += root_powers_[i].times_scalar(x.coefficients()[i]);
  return acc;
}

}  // namespace slopelab
