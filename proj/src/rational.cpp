#include "recouple/rational.hpp"

#include <sstream>
#include <utility>

#include "recouple/error.hpp"

namespace recouple {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + text + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

QMatrix::QMatrix(const Rational& scalar) : rows_(1), cols_(1), data_{scalar} {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return {};
  QMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      throw Error(ErrorCode::ParseError, "ragged matrix rows");
    }
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

bool QMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

const Rational& QMatrix::scalar() const {
  if (rows_ != 1 || cols_ != 1) {
    throw Error(ErrorCode::LengthMismatch, "scalar() on a non-1x1 matrix");
  }
  return data_.front();
}

QMatrix QMatrix::inverse() const {
  if (!is_square()) throw Error(ErrorCode::SingularMatrix, "non-square matrix");
  const std::size_t n = rows_;
  if (n == 1) {
    if (data_[0] == 0) throw Error(ErrorCode::SingularMatrix, "zero scalar");
    return QMatrix(Rational(1) / data_[0]);
  }
  QMatrix work = *this;
  QMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work(pivot, col) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::SingularMatrix, "matrix is singular");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Rational p = work(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      work(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work(r, col) == 0) continue;
      const Rational f = work(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        work(r, c) -= f * work(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorCode::LengthMismatch, "matrix product dimension mismatch");
  }
  QMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(r, k);
      if (x == 0) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        if (b(k, c) != 0) out(r, c) += x * b(k, c);
      }
    }
  }
  return out;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Rational& x = a(ar, ac);
      if (x == 0) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
        }
      }
    }
  }
  return out;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m(r, c).get_str();
    }
  }
  os << ']';
  return os.str();
}

}  // namespace recouple
