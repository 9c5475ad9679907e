#pragma once

// Characteristic polynomials det(A - lambda I) and the named polynomials of
// the family:
//   phi(k,t,j)  = det(A(k+j+1,k,t) - lambda I)
//   g(k,t,j)    = correction term in phi_j = (1-lambda) phi_{j-1} + g_j
//   nu(k,j)     = lim_{t->0+} phi(k,t,j)
//   psi(k)      = nu(k,k+1)(-lambda) / (1+lambda)^(k-1)
//   eta(k)      = lambda^(k+3) psi(k)(1/lambda)
// Closed forms are materialized once as coefficient vectors; the two
// rational-function divisions are exact polynomial divisions that throw on
// a nonzero remainder.

#include <gkktau/family.hpp>
#include <gkktau/matrix.hpp>
#include <gkktau/polynomial.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gkktau {

/// det(A - lambda I) for A with zero entries below the subdiagonal, via the
/// recurrence over leading blocks:
///   p_m = (a_mm - lambda) p_{m-1} + sum_{i<m} (-1)^(m-i) a_im (prod_{r=i+1..m} a_{r,r-1}) p_{i-1}.
inline Polynomial charpoly_hessenberg(const RatMatrix& a) {
  if (!is_hessenberg(a)) throw std::invalid_argument("charpoly_hessenberg needs a Hessenberg matrix");
  const std::size_t n = a.rows();
  std::vector<Polynomial> p(n + 1);
  p[0] = Polynomial{1};
  for (std::size_t m = 1; m <= n; ++m) {
    Polynomial next = Polynomial({a(m - 1, m - 1), -1}) * p[m - 1];
    Rational sub_product = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      sub_product *= a(i, i - 1);  // a_{i+1,i} in 1-based terms
      if (sub_product == 0) break;
      const Rational& upper = a(i - 1, m - 1);
      if (upper == 0) continue;
      Rational c = upper * sub_product;
      if ((m - i) % 2) c = -c;
      next += p[i - 1] * c;
    }
    p[m] = std::move(next);
  }
  return p[n];
}

/// det(A - lambda I) for any square A, by exact evaluation at lambda = 0..n
/// and Lagrange interpolation. Independent of the Hessenberg recurrence.
inline Polynomial charpoly_interpolate(const RatMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("charpoly of non-square matrix");
  const std::size_t n = a.rows();
  Polynomial result;
  for (std::size_t node = 0; node <= n; ++node) {
    RatMatrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= Rational(static_cast<long>(node));
    Rational value = det(shifted);
    if (value == 0) continue;
    Polynomial basis{1};
    Rational denom = 1;
    for (std::size_t other = 0; other <= n; ++other) {
      if (other == node) continue;
      basis = basis * Polynomial({Rational(-static_cast<long>(other)), 1});
      denom *= Rational(static_cast<long>(node) - static_cast<long>(other));
    }
    result += basis * Rational(value / denom);
  }
  return result;
}

inline Polynomial charpoly(const RatMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("charpoly of non-square matrix");
  return is_hessenberg(a) ? charpoly_hessenberg(a) : charpoly_interpolate(a);
}

namespace detail {

inline Polynomial one_minus_lambda_pow(std::size_t e) {
  return Polynomial::one_minus_lambda().pow(static_cast<unsigned>(e));
}

inline void check_chain_index(std::size_t k, std::size_t j) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (j < 1 || j > k + 1) throw std::invalid_argument("j must lie in 1..k+1");
}

}  // namespace detail

/// Closed form of det(A(k+j+1,k,t) - lambda I), 1 <= j <= k+1.
inline Polynomial phi(std::size_t k, const Rational& t, std::size_t j) {
  detail::check_chain_index(k, j);
  require_open_unit(t);
  using detail::one_minus_lambda_pow;
  const Rational s = 1 - t;
  if (j == 1) return one_minus_lambda_pow(k + 2) - Polynomial::constant(s);
  const Rational jr(static_cast<long>(j));
  Polynomial out = one_minus_lambda_pow(j + k + 1) - one_minus_lambda_pow(j - 1) * Rational(jr * s) +
                   one_minus_lambda_pow(j - 2) * Rational((jr - 1) * s * s);
  Polynomial bracket = Polynomial::constant(pow(t, j - 1)) -
                       one_minus_lambda_pow(j - 2) * Rational((jr - 1) * t) +
                       one_minus_lambda_pow(j - 1) * Rational(jr - 2);
  Polynomial denom = (Polynomial::one_minus_lambda() - Polynomial::constant(t)).pow(2);
  out += bracket.exact_div(denom, "phi bracket") * Rational(t * s * s);
  return out;
}

/// phi~ with phi(lambda) = t^j - lambda phi~(lambda).
inline Polynomial phi_tilde(std::size_t k, const Rational& t, std::size_t j) {
  Polynomial p = phi(k, t, j);
  return (Polynomial::constant(pow(t, j)) - p).exact_div(Polynomial::lambda(), "phi tilde");
}

/// -(1-t)(1-lambda)^(j-1) + (1-t)^2 sum_{i=0..j-2} (1-lambda)^i t^(j-2-i).
inline Polynomial g_poly(std::size_t k, const Rational& t, std::size_t j) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (j < 1) throw std::invalid_argument("g_poly needs j >= 1");
  require_open_unit(t);
  const Rational s = 1 - t;
  Polynomial geometric;
  for (std::size_t i = 0; i + 2 <= j; ++i)
    geometric += detail::one_minus_lambda_pow(i) * pow(t, j - 2 - i);
  return detail::one_minus_lambda_pow(j - 1) * Rational(-s) + geometric * Rational(s * s);
}

/// (1-lambda)^(j+k+1) - j (1-lambda)^(j-1) + (j-1) (1-lambda)^(j-2).
inline Polynomial nu(std::size_t k, std::size_t j) {
  if (k < 1 || j < 1) throw std::invalid_argument("nu needs k, j >= 1");
  using detail::one_minus_lambda_pow;
  Polynomial out = one_minus_lambda_pow(j + k + 1) -
                   one_minus_lambda_pow(j - 1) * Rational(static_cast<long>(j));
  if (j >= 2) out += one_minus_lambda_pow(j - 2) * Rational(static_cast<long>(j - 1));
  return out;
}

/// nu(k, k+1)(-lambda) / (1+lambda)^(k-1), divided exactly.
inline Polynomial psi(std::size_t k) {
  if (k < 1) throw std::invalid_argument("psi needs k >= 1");
  Polynomial one_plus = Polynomial({1, 1});
  return nu(k, k + 1).negate_variable().exact_div(one_plus.pow(static_cast<unsigned>(k - 1)),
                                                  "psi");
}

/// (1+lambda)^(k+3) - (k+1)(1+lambda) + k, the expanded form of psi(k).
inline Polynomial psi_display(std::size_t k) {
  Polynomial one_plus = Polynomial({1, 1});
  return one_plus.pow(static_cast<unsigned>(k + 3)) - one_plus * Rational(static_cast<long>(k + 1)) +
         Polynomial::constant(static_cast<long>(k));
}

/// lambda^(k+3) psi(k)(1/lambda). psi(0) = 0, so the degree drops to k+2.
inline Polynomial eta(std::size_t k) { return psi(k).reversed(k + 3); }

/// 2 lambda^(k+2) + sum_{j=2..k+3} C(k+3, j) lambda^(k+3-j).
inline Polynomial eta_display(std::size_t k) {
  std::vector<Rational> c(k + 3);
  c[k + 2] = 2;
  for (std::size_t j = 2; j <= k + 3; ++j) c[k + 3 - j] += Rational(binomial(k + 3, j));
  return Polynomial(std::move(c));
}

}  // namespace gkktau
