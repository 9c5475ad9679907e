#pragma once

#include <gkktau/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gkktau {

/// Univariate polynomial in lambda with exact rational coefficients,
/// ascending degree. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const Rational& r) { return Polynomial({r}); }
  static Polynomial lambda() { return Polynomial({0, 1}); }
  /// 1 - lambda, the diagonal entry of A - lambda I for the unit-diagonal family.
  static Polynomial one_minus_lambda() { return Polynomial({1, -1}); }
  static Polynomial monomial(const Rational& coeff, std::size_t degree) {
    std::vector<Rational> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) c_.clear();
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }

  Polynomial pow(unsigned e) const {
    Polynomial result{1};
    Polynomial base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(out));
  }

  /// p(-lambda).
  Polynomial negate_variable() const {
    std::vector<Rational> out = c_;
    for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
    return Polynomial(std::move(out));
  }

  /// lambda^n p(1/lambda); requires n >= degree.
  Polynomial reversed(std::size_t n) const {
    if (degree() > static_cast<int>(n)) throw std::invalid_argument("reversal degree below polynomial degree");
    std::vector<Rational> out(n + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) out[n - i] = c_[i];
    return Polynomial(std::move(out));
  }

  /// p(q(lambda)) by Horner.
  Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    return *this * Rational(1 / leading());
  }

  /// Euclidean division over Q: {quotient, remainder}.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = c_;
    const int dd = d.degree();
    if (degree() < dd) return {Polynomial{}, *this};
    std::vector<Rational> quo(static_cast<std::size_t>(degree() - dd + 1));
    const Rational lead = d.leading();
    for (int i = degree(); i >= dd; --i) {
      Rational q = rem[static_cast<std::size_t>(i)] / lead;
      quo[static_cast<std::size_t>(i - dd)] = q;
      if (q == 0) continue;
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(i - dd + j)] -= q * d.c_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  /// Quotient of a division that must leave no remainder.
  Polynomial exact_div(const Polynomial& d, const char* what = "polynomial") const {
    auto [q, r] = divmod(d);
    if (!r.is_zero())
      throw std::logic_error(std::string("inexact division in ") + what + ": remainder " +
                             r.to_string());
    return q;
  }

  std::string to_string(const char* var = "l") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const Rational& x = c_[static_cast<std::size_t>(i)];
      if (x == 0) continue;
      std::string mag = Rational(abs(x)).get_str();
      if (s.empty()) s += x < 0 ? "-" : "";
      else s += x < 0 ? " - " : " + ";
      bool unit = abs(x) == 1 && i > 0;
      if (!unit) s += mag;
      if (i > 0) {
        if (!unit) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// p / gcd(p, p'), monic.
inline Polynomial square_free_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.monic();
  return p.exact_div(gcd(p, p.derivative()), "square-free part").monic();
}

/// Yun's decomposition: p = lead * prod f_i^i with each f_i monic, square-free
/// and pairwise coprime. Entries are (f_i, i) for deg f_i >= 1.
inline std::vector<std::pair<Polynomial, unsigned>> square_free_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, unsigned>> out;
  if (p.degree() < 1) return out;
  Polynomial a = gcd(p, p.derivative());
  Polynomial b = p.exact_div(a, "square-free decomposition").monic();
  Polynomial c = p.derivative().exact_div(a, "square-free decomposition") * Rational(1 / p.leading());
  Polynomial d = c - b.derivative();
  for (unsigned i = 1; b.degree() >= 1; ++i) {
    Polynomial f = gcd(b, d);
    if (f.degree() >= 1) out.emplace_back(f, i);
    Polynomial nb = b.exact_div(f, "square-free decomposition");
    c = d.exact_div(f, "square-free decomposition");
    b = std::move(nb);
    d = c - b.derivative();
  }
  return out;
}

}  // namespace gkktau
