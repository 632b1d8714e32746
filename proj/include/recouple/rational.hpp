#pragma once

// Exact rational scalars and dense matrices over Q.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace recouple {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  explicit QMatrix(const Rational& scalar);

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool is_identity() const;
  /// The (0,0) entry of a 1x1 matrix.
  const Rational& scalar() const;

  QMatrix inverse() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b);
  friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Kronecker product: (a ⊗ b) acts on the left factor with a.
QMatrix kron(const QMatrix& a, const QMatrix& b);

std::string to_string(const QMatrix& m);

}  // namespace recouple
