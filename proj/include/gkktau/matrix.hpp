#pragma once

#include <gkktau/index_set.hpp>
#include <gkktau/rational.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gkktau {

/// Dense exact matrix, row-major, 0-based element access.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw std::invalid_argument("matrix entry count " + std::to_string(entries_.size()) +
                                  " != " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<Rational>& entries() const { return entries_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    RatMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        if (a(i, l) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, l) * b(l, j);
      }
    return out;
  }

  friend RatMatrix operator-(const RatMatrix& a) {
    RatMatrix out = a;
    for (auto& e : out.entries_) e = -e;
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

inline RatMatrix submatrix(const RatMatrix& a, const IndexSet& rows, const IndexSet& cols) {
  if (rows.ambient() != a.rows() || cols.ambient() != a.cols())
    throw std::invalid_argument("index set ambient does not match matrix shape");
  RatMatrix out(rows.size(), cols.size());
  std::size_t r = 0;
  for (auto i : rows) {
    std::size_t c = 0;
    for (auto j : cols) out(r, c++) = a(i - 1, j - 1);
    ++r;
  }
  return out;
}

inline RatMatrix principal_submatrix(const RatMatrix& a, const IndexSet& alpha) {
  return submatrix(a, alpha, alpha);
}

namespace detail {

/// Bareiss elimination on an integer matrix (destroyed). First nonzero
/// pivot in column order, with row swaps tracked in the sign.
inline Integer bareiss_det(std::vector<Integer>& m, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot * n + k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[pivot * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m[k * n + k] * m[i * n + j] - m[i * n + k] * m[k * n + j];
        mpz_divexact(m[i * n + j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i * n + k] = 0;
    }
    prev = m[k * n + k];
  }
  Integer d = m[n * n - 1];
  return sign < 0 ? Integer(-d) : d;
}

}  // namespace detail

/// Exact determinant. Rows are scaled to integers first, then reduced by
/// fraction-free (Bareiss) elimination. det of the 0x0 matrix is 1.
inline Rational det(const RatMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("det of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  std::vector<Integer> m(n * n);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer row_lcm = 1;
    for (std::size_t j = 0; j < n; ++j) row_lcm = lcm(row_lcm, a(i, j).get_den());
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = a(i, j).get_num() * (row_lcm / a(i, j).get_den());
    scale *= row_lcm;
  }
  Rational out(detail::bareiss_det(m, n), scale);
  out.canonicalize();
  return out;
}

inline constexpr std::size_t kDetOracleCap = 8;

/// Cofactor expansion along the first row. Test oracle only.
inline Rational det_oracle(const RatMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("det_oracle of non-square matrix");
  const std::size_t n = a.rows();
  if (n > kDetOracleCap)
    throw std::length_error("det_oracle capped at n=" + std::to_string(kDetOracleCap));
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    RatMatrix minor_matrix(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor_matrix(i - 1, cc++) = a(i, c);
    Rational term = a(0, j) * det_oracle(minor_matrix);
    if (j % 2) total -= term;
    else total += term;
  }
  return total;
}

/// A[alpha, beta]; A[empty, empty] = 1.
inline Rational minor(const RatMatrix& a, const IndexSet& alpha, const IndexSet& beta) {
  if (alpha.size() != beta.size())
    throw std::invalid_argument("minor needs #alpha == #beta, got " +
                                std::to_string(alpha.size()) + " and " +
                                std::to_string(beta.size()));
  return det(submatrix(a, alpha, beta));
}

inline Rational principal_minor(const RatMatrix& a, const IndexSet& alpha) {
  return minor(a, alpha, alpha);
}

/// Zero below the first subdiagonal: a(i, j) = 0 whenever i > j + 1.
inline bool is_hessenberg(const RatMatrix& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j + 1 < i; ++j)
      if (a(i, j) != 0) return false;
  return true;
}

/// Constant along every diagonal.
inline bool is_toeplitz(const RatMatrix& a) {
  for (std::size_t i = 1; i < a.rows(); ++i)
    for (std::size_t j = 1; j < a.cols(); ++j)
      if (a(i, j) != a(i - 1, j - 1)) return false;
  return true;
}

/// Toeplitz matrix from its first column and first row; col[0] must equal row[0].
inline RatMatrix toeplitz(const std::vector<Rational>& first_col,
                          const std::vector<Rational>& first_row) {
  if (first_col.empty() || first_row.empty() || first_col[0] != first_row[0])
    throw std::invalid_argument("toeplitz: first column and row must share the corner entry");
  RatMatrix m(first_col.size(), first_row.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      m(i, j) = i >= j ? first_col[i - j] : first_row[j - i];
  return m;
}

}  // namespace gkktau
