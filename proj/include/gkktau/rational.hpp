#pragma once

// Exact scalars. Rational is GMP's mpq_class, which keeps every value in
// canonical form (positive denominator, coprime parts) after each operation.
// Real/Complex are the extended-precision floats used by the numeric root
// finder.

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gkktau {

using Integer = mpz_class;
using Rational = mpq_class;

/// 50 significant decimal digits, a bit over 3x the double significand.
using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "num/den" or "num" (decimal, optional sign).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      r = Rational(Integer(s, 10));
    } else {
      Integer num(s.substr(0, slash), 10);
      Integer den(s.substr(slash + 1), 10);
      if (den == 0) throw std::domain_error("rational with zero denominator: " + s);
      r = Rational(num, den);
      r.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
  return r;
}

inline Rational rational_from_parts(const std::string& num, const std::string& den) {
  return parse_rational(num + "/" + den);
}

/// Always "num/den", including den = 1, so output is uniform.
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational pow(const Rational& base, unsigned long exponent) {
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  result.canonicalize();
  return result;
}

inline int sign(const Rational& r) { return sgn(r); }

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// x_+ : the positive part.
constexpr long positive_part(long x) { return x > 0 ? x : 0; }

inline Real to_real(const Integer& z) { return Real(z.get_str()); }

inline Real to_real(const Rational& r) {
  return to_real(r.get_num()) / to_real(r.get_den());
}

/// Scientific notation with `digits` significant digits.
inline std::string to_decimal(const Real& x, int digits = 25) {
  return x.str(std::max(digits, 1) - 1, std::ios_base::scientific);
}

}  // namespace gkktau
