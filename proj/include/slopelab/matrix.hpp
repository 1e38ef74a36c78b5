#pragma once

#include <cstddef>
#include <vector>

#include "slopelab/unramified.hpp"

namespace slopelab {

/// Dense row-major matrix over an unramified extension.
class Matrix {
 public:
  Matrix() = default;
  Matrix(UnramifiedContext::Ptr ctx, std::size_t rows, std::size_t cols);

  static Matrix identity(const UnramifiedContext::Ptr& ctx, std::size_t n);
  static Matrix diagonal(const std::vector<UnramifiedElement>& entries);

  const UnramifiedContext::Ptr& context() const noexcept { return ctx_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  UnramifiedElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const UnramifiedElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix times_scalar(const UnramifiedElement& a) const;

  /// Entrywise sigma^k.
  Matrix frobenius(long k = 1) const;

  bool is_zero() const;
  bool is_diagonal() const;
  bool equals_to_precision(const Matrix& o) const { return (*this - o).is_zero(); }

 private:
  UnramifiedContext::Ptr ctx_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<UnramifiedElement> data_;
};

/// Coefficients c_0..c_n (low degree first, c_n = 1) of det(t I - A), by the
/// division-free Samuelson-Berkowitz recursion so no precision is spent on
/// pivoting.
std::vector<UnramifiedElement> characteristic_polynomial(const Matrix& a);

/// Rank at the working precision: entries indistinguishable from zero are
/// treated as zero. Throws PrecisionExhausted if a pivot's valuation cannot
/// be decided.
std::size_t rank(const Matrix& a);

/// Solves A x = b for square invertible A. Throws NotInvertibleAtPrecision
/// when A is singular to the working precision.
std::vector<UnramifiedElement> solve(const Matrix& a, const std::vector<UnramifiedElement>& b);

/// Inverse of a square matrix; same errors as solve.
Matrix inverse(const Matrix& a);

/// Kronecker product.
Matrix kronecker(const Matrix& a, const Matrix& b);

}  // namespace slopelab
