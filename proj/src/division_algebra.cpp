#include "slopelab/division_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "slopelab/error.hpp"

namespace slopelab {

namespace {

const char* kModule = "division_algebras";

UnramifiedElement field_power_of_p(const DLambdaContext::Ptr& ctx, long k) {
  return UnramifiedElement::power_of_p(ctx->field(), k);
}

std::size_t idx(long v) { return static_cast<std::size_t>(v); }

// Basis monomial x^k Pi^i of D_lambda.
DLambdaElement basis_monomial(const DLambdaContext::Ptr& ctx, long k, long i) {
  return DLambdaElement::monomial(ctx, UnramifiedElement::root(ctx->field()).pow(static_cast<unsigned long long>(k)), i);
}

UnramifiedElement random_field_element(std::mt19937_64& rng, const UnramifiedContext::Ptr& f) {
  std::uniform_int_distribution<long> digit(0, f->prime() - 1), shift(0, 2);
  std::vector<PadicNumber> c;
  for (int j = 0; j < f->degree(); ++j) {
    Integer n = 0;
    for (long t = 0; t < f->precision(); ++t) n = n * f->prime() + digit(rng);
    c.push_back(PadicNumber::from_integer(f->prime(), n, f->precision()).shifted(shift(rng)));
  }
  return UnramifiedElement(f, std::move(c));
}

DLambdaElement random_element(std::mt19937_64& rng, const DLambdaContext::Ptr& ctx) {
  std::vector<UnramifiedElement> c;
  for (long i = 0; i < ctx->h(); ++i) c.push_back(random_field_element(rng, ctx->field()));
  return DLambdaElement(ctx, std::move(c));
}

}  // namespace

DLambdaContext::Ptr DLambdaContext::make(long p, long d, long h, long prec) {
  if (h <= 0 || std::gcd(d, h) != 1) {
    throw Error(ErrorKind::NotLowestTerms, kModule,
                std::to_string(d) + "/" + std::to_string(h) + " is not in lowest terms with positive denominator");
  }
  std::shared_ptr<DLambdaContext> c(new DLambdaContext());
  c->p_ = p;
  c->d_ = d;
  c->h_ = h;
  c->field_ = UnramifiedContext::make(p, static_cast<int>(h), prec);
  c->base_ = UnramifiedContext::make(p, 1, prec);
  return c;
}

DLambdaElement::DLambdaElement(DLambdaContext::Ptr ctx, std::vector<UnramifiedElement> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  if (static_cast<long>(c_.size()) != ctx_->h()) throw Error(ErrorKind::SizeMismatch, kModule, "need exactly h coefficients");
  for (const auto& a : c_) {
    if (!a.context()->same_field(*ctx_->field())) throw Error(ErrorKind::ContextMismatch, kModule, "coefficient outside Q_{p^h}");
  }
}

DLambdaElement DLambdaElement::zero(const DLambdaContext::Ptr& ctx) {
  return DLambdaElement(ctx, std::vector<UnramifiedElement>(idx(ctx->h()), UnramifiedElement::zero(ctx->field())));
}

DLambdaElement DLambdaElement::one(const DLambdaContext::Ptr& ctx) {
  return monomial(ctx, UnramifiedElement::one(ctx->field()), 0);
}

DLambdaElement DLambdaElement::pi(const DLambdaContext::Ptr& ctx) {
  if (ctx->h() == 1) return monomial(ctx, field_power_of_p(ctx, ctx->d()), 0);
  return monomial(ctx, UnramifiedElement::one(ctx->field()), 1);
}

DLambdaElement DLambdaElement::monomial(const DLambdaContext::Ptr& ctx, const UnramifiedElement& a, long i) {
  if (i < 0 || i >= ctx->h()) throw Error(ErrorKind::InvalidArgument, kModule, "monomial degree out of range");
  auto z = zero(ctx);
  z.c_[idx(i)] = a;
  return z;
}

void DLambdaElement::require_same_algebra(const DLambdaElement& o) const {
  if (ctx_ != o.ctx_ && !(ctx_->prime() == o.ctx_->prime() && ctx_->d() == o.ctx_->d() && ctx_->h() == o.ctx_->h() &&
                          ctx_->field()->same_field(*o.ctx_->field()))) {
    throw Error(ErrorKind::ContextMismatch, kModule, "elements of different division algebras");
  }
}

DLambdaElement DLambdaElement::operator+(const DLambdaElement& o) const {
  require_same_algebra(o);
  auto r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

DLambdaElement DLambdaElement::operator-(const DLambdaElement& o) const {
  require_same_algebra(o);
  auto r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

DLambdaElement DLambdaElement::operator*(const DLambdaElement& o) const { return dl_mul(*this, o); }

bool DLambdaElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const UnramifiedElement& a) { return a.is_zero(); });
}

std::vector<UnramifiedElement> DLambdaElement::coordinates() const {
  std::vector<UnramifiedElement> out;
  for (const auto& a : c_)
    for (const auto& x : a.coefficients()) out.push_back(UnramifiedElement::from_scalar(ctx_->base(), x));
  return out;
}

DLambdaElement DLambdaElement::from_coordinates(const DLambdaContext::Ptr& ctx, const std::vector<UnramifiedElement>& coords) {
  const std::size_t h = idx(ctx->h());
  if (coords.size() != h * h) throw Error(ErrorKind::SizeMismatch, kModule, "need h^2 coordinates");
  std::vector<UnramifiedElement> c;
  for (std::size_t i = 0; i < h; ++i) {
    std::vector<PadicNumber> a;
    for (std::size_t k = 0; k < h; ++k) a.push_back(coords[i * h + k].coefficients()[0]);
    c.emplace_back(ctx->field(), std::move(a));
  }
  return DLambdaElement(ctx, std::move(c));
}

std::string DLambdaElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += " + ";
    out += "(" + c_[i].to_string() + ")";
    if (i == 1) out += "*Pi";
    if (i > 1) out += "*Pi^" + std::to_string(i);
  }
  return out;
}

DLambdaElement dl_mul(const DLambdaElement& x, const DLambdaElement& y) {
  const auto& ctx = x.context();
  x.require_same_algebra(y);
  const long h = ctx->h();
  auto out = DLambdaElement::zero(ctx);
  std::vector<UnramifiedElement> c = out.coefficients();
  const auto wrap = field_power_of_p(ctx, ctx->d());
  for (long i = 0; i < h; ++i) {
    const auto& a = x.coefficients()[idx(i)];
    if (a.is_exact_zero()) continue;
    for (long j = 0; j < h; ++j) {
      const auto& b = y.coefficients()[idx(j)];
      if (b.is_exact_zero()) continue;
      // a Pi^i b Pi^j = a sigma^i(b) Pi^(i+j), and Pi^h = p^d
      auto term = a * b.frobenius(i);
      long k = i + j;
      if (k >= h) {
        term *= wrap;
        k -= h;
      }
      c[idx(k)] += term;
    }
  }
  return DLambdaElement(ctx, std::move(c));
}

DLambdaElement dl_inverse(const DLambdaElement& x) {
  const auto& ctx = x.context();
  const long h = ctx->h();
  const std::size_t n = idx(h * h);
  if (x.is_zero()) throw Error(ErrorKind::NotInvertibleAtPrecision, kModule, "element is zero to working precision");
  Matrix left(ctx->base(), n, n);
  for (long i = 0; i < h; ++i)
    for (long k = 0; k < h; ++k) {
      auto col = dl_mul(x, basis_monomial(ctx, k, i)).coordinates();
      for (std::size_t r = 0; r < n; ++r) left(r, idx(i * h + k)) = col[r];
    }
  try {
    auto y = DLambdaElement::from_coordinates(ctx, solve(left, DLambdaElement::one(ctx).coordinates()));
    if (!dl_mul(y, x).equals_to_precision(DLambdaElement::one(ctx))) {
      throw Error(ErrorKind::NotInvertibleAtPrecision, kModule, "left and right inverses disagree at working precision");
    }
    return y;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotInvertibleAtPrecision || e.kind() == ErrorKind::PrecisionExhausted) {
      throw Error(ErrorKind::NotInvertibleAtPrecision, kModule, e.what());
    }
    throw;
  }
}

namespace {

// Skew polynomial sum_i a_i F^i with F a = sigma(a) F, unreduced.
using SkewPoly = std::vector<UnramifiedElement>;

SkewPoly skew_product(const SkewPoly& x, const SkewPoly& y, const UnramifiedContext::Ptr& field) {
  SkewPoly out(x.size() + y.size() - 1, UnramifiedElement::zero(field));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j].frobenius(static_cast<long>(i));
  return out;
}

// Reduction modulo the central polynomial F^h - c, highest degree first.
SkewPoly reduce_central(SkewPoly f, std::size_t h, const UnramifiedElement& c) {
  for (std::size_t k = f.size(); k-- > h;) {
    f[k - h] += f[k] * c;
    f[k] = UnramifiedElement::zero(c.context());
  }
  f.resize(h, UnramifiedElement::zero(c.context()));
  return f;
}

}  // namespace

bool f_to_pi_check(long p, long d, long h, long prec) {
  auto target = DLambdaContext::make(p, -d, h, prec);  // D_{-lambda}: Pi^h = p^-d
  const auto& field = target->field();
  const auto c = UnramifiedElement::power_of_p(field, -d);
  auto to_pi = [&](const SkewPoly& f) { return DLambdaElement(target, f); };
  auto mono = [&](long k, long i) {
    SkewPoly f(idx(h), UnramifiedElement::zero(field));
    f[idx(i)] = UnramifiedElement::root(field).pow(static_cast<unsigned long long>(k));
    return f;
  };
  for (long i = 0; i < h; ++i)
    for (long k = 0; k < h; ++k)
      for (long j = 0; j < h; ++j)
        for (long l = 0; l < h; ++l) {
          auto a = mono(k, i), b = mono(l, j);
          auto f_side = reduce_central(skew_product(a, b, field), idx(h), c);
          if (!to_pi(f_side).equals_to_precision(dl_mul(to_pi(a), to_pi(b)))) return false;
        }
  // F^h maps to Pi^h
  SkewPoly f{UnramifiedElement::one(field)};
  SkewPoly gen(2, UnramifiedElement::zero(field));
  gen[1] = UnramifiedElement::one(field);
  for (long i = 0; i < h; ++i) f = skew_product(f, gen, field);
  auto pi_h = DLambdaElement::one(target);
  for (long i = 0; i < h; ++i) pi_h = dl_mul(pi_h, DLambdaElement::pi(target));
  return to_pi(reduce_central(f, idx(h), c)).equals_to_precision(pi_h);
}

bool lambda_shift_check(long p, long d, long h, long prec) {
  auto lo = DLambdaContext::make(p, d, h, prec);
  auto hi = DLambdaContext::make(p, d + h, h, prec);
  auto map = [&](const DLambdaElement& x) {
    std::vector<UnramifiedElement> c;
    for (long i = 0; i < h; ++i) c.push_back(x.coefficients()[idx(i)].shifted(-i));
    return DLambdaElement(hi, std::move(c));
  };
  for (long i = 0; i < h; ++i)
    for (long k = 0; k < h; ++k)
      for (long j = 0; j < h; ++j)
        for (long l = 0; l < h; ++l) {
          auto a = basis_monomial(lo, k, i), b = basis_monomial(lo, l, j);
          if (!map(dl_mul(a, b)).equals_to_precision(dl_mul(map(a), map(b)))) return false;
        }
  // the image of Pi satisfies the relation of D_lambda inside D_{lambda+1}
  auto image = map(DLambdaElement::pi(lo));
  auto power = DLambdaElement::one(hi);
  for (long i = 0; i < h; ++i) power = dl_mul(power, image);
  return power.equals_to_precision(DLambdaElement::monomial(hi, UnramifiedElement::power_of_p(hi->field(), d), 0));
}

Matrix SplittingRep::field_image(const UnramifiedElement& a) const {
  std::vector<UnramifiedElement> d;
  for (long i = 0; i < ctx->h(); ++i) d.push_back(a.frobenius(i));
  return Matrix::diagonal(d);
}

Matrix SplittingRep::operator()(const DLambdaElement& x) const {
  const std::size_t h = idx(ctx->h());
  Matrix out(ctx->field(), h, h);
  Matrix power = Matrix::identity(ctx->field(), h);
  for (std::size_t i = 0; i < h; ++i) {
    out = out + field_image(x.coefficients()[i]) * power;
    power = power * pi;
  }
  return out;
}

SplittingRep splitting_rep(const DLambdaContext::Ptr& ctx) {
  const std::size_t h = idx(ctx->h());
  Matrix pi(ctx->field(), h, h);
  // Pi v_i = v_{i-1} for i > 0 and Pi v_0 = v_{h-1} p^d
  for (std::size_t i = 1; i < h; ++i) pi(i - 1, i) = UnramifiedElement::one(ctx->field());
  pi(h - 1, 0) = field_power_of_p(ctx, ctx->d());
  return {ctx, std::move(pi)};
}

std::size_t monomial_image_rank(const SplittingRep& rep) {
  const long h = rep.ctx->h();
  const std::size_t n = idx(h * h);
  Matrix span(rep.ctx->field(), n, n);
  for (long i = 0; i < h; ++i)
    for (long k = 0; k < h; ++k) {
      Matrix m = rep(basis_monomial(rep.ctx, k, i));
      for (std::size_t r = 0; r < n; ++r) span(r, idx(i * h + k)) = m(r / idx(h), r % idx(h));
    }
  return rank(span);
}

std::size_t centralizer_dimension(const DLambdaContext::Ptr& ctx) {
  const long h = ctx->h();
  const std::size_t n = idx(h * h);
  const auto pi = DLambdaElement::pi(ctx);
  const auto w = DLambdaElement::monomial(ctx, UnramifiedElement::root(ctx->field()), 0);
  Matrix sys(ctx->base(), 2 * n, n);
  for (long i = 0; i < h; ++i)
    for (long k = 0; k < h; ++k) {
      auto e = basis_monomial(ctx, k, i);
      auto c1 = (dl_mul(pi, e) - dl_mul(e, pi)).coordinates();
      auto c2 = (dl_mul(w, e) - dl_mul(e, w)).coordinates();
      for (std::size_t r = 0; r < n; ++r) {
        sys(r, idx(i * h + k)) = c1[r];
        sys(n + r, idx(i * h + k)) = c2[r];
      }
    }
  return n - rank(sys);
}

std::vector<CheckResult> run_dlambda_checks(const DLambdaContext::Ptr& ctx, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, auto&& body) {
    try {
      std::string detail;
      bool ok = body(detail);
      out.push_back({name, ok, detail});
    } catch (const Error& e) {
      out.push_back({name, false, std::string(to_string(e.kind())) + ": " + e.what()});
    }
  };
  const auto one = DLambdaElement::one(ctx);
  const auto pi = DLambdaElement::pi(ctx);

  run("unit", [&](std::string&) {
    for (int s = 0; s < samples; ++s) {
      auto x = random_element(rng, ctx);
      if (!dl_mul(x, one).equals_to_precision(x) || !dl_mul(one, x).equals_to_precision(x)) return false;
    }
    return true;
  });
  run("associativity", [&](std::string&) {
    for (int s = 0; s < samples; ++s) {
      auto x = random_element(rng, ctx), y = random_element(rng, ctx), z = random_element(rng, ctx);
      if (!dl_mul(dl_mul(x, y), z).equals_to_precision(dl_mul(x, dl_mul(y, z)))) return false;
    }
    return true;
  });
  run("distributivity", [&](std::string&) {
    for (int s = 0; s < samples; ++s) {
      auto x = random_element(rng, ctx), y = random_element(rng, ctx), z = random_element(rng, ctx);
      if (!dl_mul(x, y + z).equals_to_precision(dl_mul(x, y) + dl_mul(x, z))) return false;
      if (!dl_mul(y + z, x).equals_to_precision(dl_mul(y, x) + dl_mul(z, x))) return false;
    }
    return true;
  });
  run("pi-twist", [&](std::string&) {
    for (int s = 0; s < samples; ++s) {
      auto a = random_field_element(rng, ctx->field());
      auto lhs = dl_mul(pi, DLambdaElement::monomial(ctx, a, 0));
      auto rhs = dl_mul(DLambdaElement::monomial(ctx, a.frobenius(), 0), pi);
      if (!lhs.equals_to_precision(rhs)) return false;
    }
    return true;
  });
  run("pi-power", [&](std::string&) {
    auto power = one;
    for (long i = 0; i < ctx->h(); ++i) power = dl_mul(power, pi);
    return power.equals_to_precision(DLambdaElement::monomial(ctx, field_power_of_p(ctx, ctx->d()), 0));
  });
  run("inverse", [&](std::string& detail) {
    int inverted = 0;
    for (int s = 0; s < samples; ++s) {
      auto x = random_element(rng, ctx);
      if (x.is_zero()) continue;
      auto y = dl_inverse(x);
      if (!dl_mul(x, y).equals_to_precision(one) || !dl_mul(y, x).equals_to_precision(one)) return false;
      ++inverted;
    }
    detail = std::to_string(inverted) + " random elements";
    return inverted > 0;
  });
  run("center", [&](std::string& detail) {
    auto dim = centralizer_dimension(ctx);
    detail = "dimension " + std::to_string(dim);
    return dim == 1;
  });
  run("f-to-pi", [&](std::string&) { return f_to_pi_check(ctx->prime(), ctx->d(), ctx->h(), ctx->field()->precision()); });
  run("lambda-shift", [&](std::string&) {
    return lambda_shift_check(ctx->prime(), ctx->d(), ctx->h(), ctx->field()->precision());
  });
  const auto rep = splitting_rep(ctx);
  run("splitting-morphism", [&](std::string&) {
    for (int s = 0; s < samples; ++s) {
      auto x = random_element(rng, ctx), y = random_element(rng, ctx);
      if (!rep(dl_mul(x, y)).equals_to_precision(rep(x) * rep(y))) return false;
    }
    return true;
  });
  run("splitting-onto", [&](std::string& detail) {
    auto r = monomial_image_rank(rep);
    detail = "rank " + std::to_string(r);
    return r == idx(ctx->h() * ctx->h());
  });
  return out;
}

}  // namespace slopelab
