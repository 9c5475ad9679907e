#pragma once

// The Toeplitz Hessenberg family A(n, k, t) and its t -> 0 limit B(k).
//
// A(n, k, t) has first column (1, 1, 0, ..., 0)^T and first row
// (1, 0 x k, a_1, ..., a_{n-k-1}); the coefficients a_j are fixed by
// requiring det A(k+j+1, k, t) = t^j.

#include <gkktau/matrix.hpp>
#include <gkktau/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkktau {

struct FamilyParams {
  std::size_t n = 1;
  std::size_t k = 1;
  Rational t = make_rational(1, 2);

  void validate() const {
    if (n < 1) throw std::invalid_argument("family order n must be >= 1");
    if (k < 1) throw std::invalid_argument("family band parameter k must be >= 1");
    if (t <= 0 || t >= 1)
      throw std::invalid_argument("family parameter t must lie in (0, 1), got " + to_string(t));
  }
};

inline void require_open_unit(const Rational& t) {
  if (t <= 0 || t >= 1)
    throw std::invalid_argument("t must lie in (0, 1), got " + to_string(t));
}

/// Closed form of a_j: (-1)^k (1-t) for j = 1, else (-1)^(k+j) t^(j-2) (1-t)^2.
/// Satisfies the defining determinant condition only for j <= k+2; see
/// closed_form_applies.
inline Rational coeff_a(std::size_t k, const Rational& t, std::size_t j) {
  if (j < 1) throw std::invalid_argument("coeff_a index j must be >= 1");
  const Rational one_minus_t = 1 - t;
  if (j == 1) return k % 2 ? Rational(-one_minus_t) : one_minus_t;
  Rational mag = one_minus_t * one_minus_t;
  if (j > 2) mag *= pow(t, j - 2);
  return (k + j) % 2 ? Rational(-mag) : mag;
}

/// True when coeff_a(k, t, j) coincides with the coefficient defined by
/// det A(k+j+1, k, t) = t^j. From j = k+3 on the expansion picks up leading
/// determinants D(m) = t^(m-k-1) != 1 and the closed form no longer applies.
constexpr bool closed_form_applies(std::size_t k, std::size_t j) { return j >= 1 && j <= k + 2; }

/// a_1, ..., a_{n-k-1} obtained by solving the first-row expansion
///   D(k+j+1) = D(k+j) + sum_{l=1..j} (-1)^(k+l) a_l D(j-l) = t^j
/// one unknown at a time, where D(m) = det A(m, k, t) and D(m) = 1 for m <= k+1.
/// Uses no closed form for a_j.
inline std::vector<Rational> coeff_a_solve(std::size_t n, std::size_t k, const Rational& t) {
  require_open_unit(t);
  if (k < 1) throw std::invalid_argument("coeff_a_solve needs k >= 1");
  if (n <= k + 1) throw std::invalid_argument("coeff_a_solve needs n > k+1");
  const std::size_t count = n - k - 1;
  std::vector<Rational> a(count + 1);     // 1-based
  std::vector<Rational> leading(n + 1);   // D(m), m = 0..n
  for (std::size_t m = 0; m <= k + 1 && m <= n; ++m) leading[m] = 1;
  auto sgn = [k](std::size_t l) { return (k + l) % 2 ? -1 : 1; };
  for (std::size_t j = 1; j <= count; ++j) {
    Rational known = leading[k + j];
    for (std::size_t l = 1; l < j; ++l) {
      Rational term = a[l] * leading[j - l];
      if (sgn(l) < 0) known -= term;
      else known += term;
    }
    // coefficient of a_j is (-1)^(k+j) D(0) = (-1)^(k+j)
    Rational rhs = pow(t, j) - known;
    a[j] = sgn(j) < 0 ? Rational(-rhs) : rhs;
    Rational check = known + (sgn(j) < 0 ? Rational(-a[j]) : a[j]);
    leading[k + j + 1] = check;
  }
  return {a.begin() + 1, a.end()};
}

/// A(n, k, t). For n <= k+1 the lower bidiagonal matrix of ones. Entries use
/// the closed form where it applies (cross-checked against coeff_a_solve)
/// and the solved coefficients beyond that.
inline RatMatrix build_A(const FamilyParams& p) {
  p.validate();
  std::vector<Rational> col(p.n), row(p.n);
  col[0] = 1;
  row[0] = 1;
  if (p.n > 1) col[1] = 1;
  if (p.n > p.k + 1) {
    auto solved = coeff_a_solve(p.n, p.k, p.t);
    for (std::size_t j = 1; j + p.k + 1 <= p.n; ++j) {
      if (!closed_form_applies(p.k, j)) {
        row[p.k + j] = solved[j - 1];
        continue;
      }
      Rational a = coeff_a(p.k, p.t, j);
      if (a != solved[j - 1])
        throw std::logic_error("closed-form a_" + std::to_string(j) +
                               " disagrees with the expansion solve");
      row[p.k + j] = a;
    }
  }
  return toeplitz(col, row);
}

inline RatMatrix build_A(std::size_t n, std::size_t k, const Rational& t) {
  return build_A(FamilyParams{n, k, t});
}

/// B(k) = lim_{t->0+} A(2k+2, k, t), built from its pattern: first row
/// (1, 0 x k, (-1)^k, (-1)^k, 0 x (k-1)).
inline RatMatrix build_B(std::size_t k) {
  if (k < 1) throw std::invalid_argument("build_B needs k >= 1");
  const std::size_t n = 2 * k + 2;
  std::vector<Rational> col(n), row(n);
  col[0] = row[0] = col[1] = 1;
  const Rational s = k % 2 ? -1 : 1;
  row[k + 1] = s;
  row[k + 2] = s;
  return toeplitz(col, row);
}

/// Exponent (j-k-1)_+ of the consecutive principal minor of length j.
constexpr std::size_t window_exponent(std::size_t k, std::size_t length) {
  return length > k + 1 ? length - k - 1 : 0;
}

/// A(n,k,t)[i : i+j-1] = t^((j-k-1)_+), 1-based start i, length j >= 1.
inline Rational minor_formula(std::size_t n, std::size_t k, const Rational& t, std::size_t i,
                              std::size_t j) {
  if (i < 1 || j < 1 || i + j - 1 > n)
    throw std::out_of_range("window " + std::to_string(i) + ":" + std::to_string(i + j - 1) +
                            " outside 1.." + std::to_string(n));
  return pow(t, window_exponent(k, j));
}

}  // namespace gkktau
