#include "slopelab/matrix.hpp"

#include <algorithm>
#include <optional>

#include "slopelab/error.hpp"

namespace slopelab {

namespace {
const char* kModule = "padic_arith";

void check_same(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::SizeMismatch, kModule, "matrix shapes differ");
  }
}

// Row index and valuation of the smallest-valuation entry in column c at or
// below row r0, skipping entries that are zero to precision.
std::optional<std::pair<std::size_t, std::size_t>> find_pivot(const Matrix& m, std::size_t r0, std::size_t c0) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  long best_val = 0;
  bool ambiguous = false;
  for (std::size_t j = c0; j < m.cols(); ++j) {
    for (std::size_t i = r0; i < m.rows(); ++i) {
      const auto& e = m(i, j);
      if (e.is_zero()) continue;
      auto v = e.valuation();
      if (!v) {
        ambiguous = true;
        continue;
      }
      if (!best || *v < best_val) {
        best = {i, j};
        best_val = *v;
      }
    }
  }
  if (!best && ambiguous) {
    throw Error(ErrorKind::PrecisionExhausted, kModule, "pivot valuation undetermined at working precision");
  }
  return best;
}
}  // namespace

Matrix::Matrix(UnramifiedContext::Ptr ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), data_(rows * cols, UnramifiedElement::zero(ctx_)) {}

Matrix Matrix::identity(const UnramifiedContext::Ptr& ctx, std::size_t n) {
  Matrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = UnramifiedElement::one(ctx);
  return m;
}

Matrix Matrix::diagonal(const std::vector<UnramifiedElement>& entries) {
  if (entries.empty()) throw Error(ErrorKind::InvalidArgument, kModule, "empty diagonal");
  Matrix m(entries.front().context(), entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorKind::SizeMismatch, kModule, "matrix product shape mismatch");
  Matrix r(ctx_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_exact_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const auto& b = o(k, j);
        if (!b.is_exact_zero()) r(i, j) += a * b;
      }
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_same(*this, o);
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_same(*this, o);
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::times_scalar(const UnramifiedElement& a) const {
  Matrix r = *this;
  for (auto& e : r.data_) e *= a;
  return r;
}

Matrix Matrix::frobenius(long k) const {
  Matrix r = *this;
  for (auto& e : r.data_) e = e.frobenius(k);
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const UnramifiedElement& e) { return e.is_zero(); });
}

bool Matrix::is_diagonal() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

std::vector<UnramifiedElement> characteristic_polynomial(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::SizeMismatch, kModule, "characteristic polynomial of a non-square matrix");
  const auto& ctx = a.context();
  const std::size_t n = a.rows();
  auto zero = UnramifiedElement::zero(ctx);
  // poly holds det(t I - A_k) with the highest-degree coefficient first
  std::vector<UnramifiedElement> poly{UnramifiedElement::one(ctx)};
  for (std::size_t k = 0; k < n; ++k) {
    // A_{k+1} = [[A_k, C], [R, a_kk]]; Toeplitz column is
    // (1, -a_kk, -R C, -R A_k C, ..., -R A_k^{k-1} C)
    std::vector<UnramifiedElement> col;
    col.push_back(UnramifiedElement::one(ctx));
    col.push_back(-a(k, k));
    std::vector<UnramifiedElement> v(k, zero);
    for (std::size_t i = 0; i < k; ++i) v[i] = a(i, k);
    for (std::size_t power = 0; power < k; ++power) {
      UnramifiedElement dot = zero;
      for (std::size_t j = 0; j < k; ++j) {
        if (!a(k, j).is_exact_zero() && !v[j].is_exact_zero()) dot += a(k, j) * v[j];
      }
      col.push_back(-dot);
      if (power + 1 < k) {
        std::vector<UnramifiedElement> next(k, zero);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            if (!a(i, j).is_exact_zero() && !v[j].is_exact_zero()) next[i] += a(i, j) * v[j];
          }
        }
        v = std::move(next);
      }
    }
    std::vector<UnramifiedElement> out(k + 2, zero);
    for (std::size_t i = 0; i < k + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, k); ++j) {
        const auto& t = col[i - j];
        if (!t.is_exact_zero() && !poly[j].is_exact_zero()) out[i] += t * poly[j];
      }
    }
    poly = std::move(out);
  }
  std::reverse(poly.begin(), poly.end());
  return poly;
}

std::size_t rank(const Matrix& a) {
  Matrix m = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    auto pivot = find_pivot(m, r, c);
    if (!pivot) break;
    auto [pi, pj] = *pivot;
    // bring the pivot to (r, c)
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(pi, j));
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, c), m(i, pj));
    UnramifiedElement inv = m(r, c).inverse();
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_exact_zero()) continue;
      UnramifiedElement f = m(i, c) * inv;
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        if (!m(r, j).is_exact_zero()) m(i, j) -= f * m(r, j);
      }
      m(i, c) = UnramifiedElement::zero(m.context());
    }
    ++r;
  }
  return r;
}

std::vector<UnramifiedElement> solve(const Matrix& a, const std::vector<UnramifiedElement>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error(ErrorKind::SizeMismatch, kModule, "solve needs a square system");
  Matrix m = a;
  std::vector<UnramifiedElement> rhs = b;
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> best;
    long best_val = 0;
    for (std::size_t i = c; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      auto v = m(i, c).valuation();
      if (v && (!best || *v < best_val)) {
        best = i;
        best_val = *v;
      }
    }
    if (!best) throw Error(ErrorKind::NotInvertibleAtPrecision, kModule, "matrix singular at working precision");
    for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(*best, j));
    std::swap(rhs[c], rhs[*best]);
    UnramifiedElement inv = m(c, c).inverse();
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c).is_exact_zero()) continue;
      UnramifiedElement f = m(i, c) * inv;
      for (std::size_t j = c + 1; j < n; ++j) {
        if (!m(c, j).is_exact_zero()) m(i, j) -= f * m(c, j);
      }
      rhs[i] -= f * rhs[c];
      m(i, c) = UnramifiedElement::zero(m.context());
    }
  }
  std::vector<UnramifiedElement> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] * m(i, i).inverse();
  return x;
}

Matrix inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::SizeMismatch, kModule, "inverse needs a square matrix");
  Matrix out(a.context(), n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<UnramifiedElement> e(n, UnramifiedElement::zero(a.context()));
    e[j] = UnramifiedElement::one(a.context());
    auto col = solve(a, e);
    for (std::size_t i = 0; i < n; ++i) out(i, j) = col[i];
  }
  return out;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  if (!a.context()->same_field(*b.context())) throw Error(ErrorKind::ContextMismatch, kModule, "matrices over different fields");
  Matrix out(a.context(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace slopelab
