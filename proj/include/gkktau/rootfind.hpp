#pragma once

// Exact real-root isolation (Sturm sequences over the integers) and
// extended-precision complex root approximation (Aberth-Ehrlich).

#include <gkktau/charpoly.hpp>
#include <gkktau/polynomial.hpp>
#include <gkktau/rational.hpp>

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gkktau {

/// Exactly one distinct real root of the target polynomial lies in (lo, hi].
struct RootEnclosure {
  Rational lo;
  Rational hi;
  bool multiplicity_simple = true;
  unsigned multiplicity = 1;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
};

namespace detail {

using IntPoly = std::vector<Integer>;  // ascending, trimmed

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Scales a rational polynomial by a positive constant to a primitive
/// integer polynomial. Signs are preserved.
inline IntPoly primitive_integer(const Polynomial& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
  IntPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.get_num() * (den / c.get_den()));
  Integer content = 0;
  for (const auto& c : out) content = gcd(content, c);
  if (content > 1)
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  trim(out);
  return out;
}

inline void make_primitive(IntPoly& p) {
  Integer content = 0;
  for (const auto& c : p) content = gcd(content, c);
  if (content > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
}

/// |lc(b)|^(da-db+1) * a mod b; a positive multiple of the true remainder.
inline IntPoly positive_pseudo_remainder(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  const Integer& lc = b.back();
  const bool negate = lc < 0;
  std::size_t steps = 0;
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    Integer lead = a.back();
    for (auto& c : a) c *= lc;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
    a.pop_back();
    trim(a);
    ++steps;
  }
  // each step multiplied by lc; restore a positive factor overall
  if (negate && steps % 2) for (auto& c : a) c = -c;
  return a;
}

inline int sign_at(const IntPoly& p, const Integer& num, const Integer& den) {
  // sum c_i num^i den^(d-i), a positive multiple of p(num/den)
  Integer acc = 0;
  Integer den_pow = 1;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * num + p[i] * den_pow;
    den_pow *= den;
  }
  return sgn(acc);
}

}  // namespace detail

/// Sturm chain of the square-free part of a nonzero polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
    square_free_ = square_free_part(p);
    chain_.push_back(detail::primitive_integer(square_free_));
    if (square_free_.degree() >= 1) {
      chain_.push_back(detail::primitive_integer(square_free_.derivative()));
      while (chain_.back().size() > 1) {
        auto r = detail::positive_pseudo_remainder(chain_[chain_.size() - 2], chain_.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        detail::make_primitive(r);
        chain_.push_back(std::move(r));
      }
    }
  }

  const Polynomial& square_free() const { return square_free_; }

  int variations_at(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& q : chain_) {
      int s = detail::sign_at(q, x.get_num(), x.get_den());
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Distinct real roots in (lo, hi].
  int count(const Rational& lo, const Rational& hi) const {
    return variations_at(lo) - variations_at(hi);
  }

 private:
  Polynomial square_free_;
  std::vector<detail::IntPoly> chain_;
};

/// 1 + max |c_i / c_deg|: every root has modulus below it.
inline Rational cauchy_bound(const Polynomial& p) {
  Rational best = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) best = std::max<Rational>(best, abs(p.coeffs()[static_cast<std::size_t>(i)]) / lead);
  return best + 1;
}

namespace detail {

inline unsigned multiplicity_in(const Polynomial& p, const Rational& lo, const Rational& hi) {
  unsigned m = 1;
  Polynomial g = gcd(p, p.derivative());
  while (g.degree() >= 1 && SturmSequence(g).count(lo, hi) > 0) {
    ++m;
    g = gcd(g, g.derivative());
  }
  return m;
}

}  // namespace detail

/// Enclosures of all distinct real roots of p in (lo, hi], increasing.
inline std::vector<RootEnclosure> sturm_isolate(const Polynomial& p, const Rational& lo,
                                                const Rational& hi) {
  if (p.is_zero()) throw std::invalid_argument("sturm_isolate of the zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("sturm_isolate needs lo < hi");
  SturmSequence s(p);
  std::vector<RootEnclosure> out;
  struct Pending {
    Rational lo, hi;
    int count;
  };
  std::vector<Pending> stack{{lo, hi, s.count(lo, hi)}};
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (cur.count == 0) continue;
    if (cur.count == 1) {
      out.push_back({cur.lo, cur.hi});
      continue;
    }
    Rational mid = (cur.lo + cur.hi) / 2;
    int left = s.count(cur.lo, mid);
    // push right first so the left half is processed first
    stack.push_back({mid, cur.hi, cur.count - left});
    stack.push_back({cur.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  if (p.degree() > s.square_free().degree()) {
    for (auto& e : out) {
      e.multiplicity = detail::multiplicity_in(p, e.lo, e.hi);
      e.multiplicity_simple = e.multiplicity == 1;
    }
  }
  return out;
}

/// All distinct real roots.
inline std::vector<RootEnclosure> real_roots(const Polynomial& p) {
  if (p.degree() < 1) {
    if (p.is_zero()) throw std::invalid_argument("real_roots of the zero polynomial");
    return {};
  }
  Rational b = cauchy_bound(p);
  return sturm_isolate(p, -b, b);
}

inline RootEnclosure refine(const RootEnclosure& e, const SturmSequence& s, const Rational& width) {
  RootEnclosure out = e;
  while (out.width() > width) {
    Rational mid = out.midpoint();
    if (s.count(out.lo, mid) > 0) out.hi = mid;
    else out.lo = mid;
  }
  return out;
}

/// Bisects until hi - lo <= width, keeping the same root.
inline RootEnclosure refine(const RootEnclosure& e, const Polynomial& p, const Rational& width) {
  if (e.width() <= width) return e;
  return refine(e, SturmSequence(p), width);
}

/// 2^-80, the width below which overlapping enclosures fall back to an
/// exact equality test.
inline Rational default_refine_width() {
  Rational w(Integer(1), Integer(1) << 80);
  return w;
}

/// Orders the root of p in ea against the root of q in eb: -1, 0 or 1.
/// Ties are proven exactly through gcd(p, q).
inline int compare_roots(const Polynomial& p, RootEnclosure ea, const Polynomial& q,
                         RootEnclosure eb) {
  SturmSequence sp(p), sq(q);
  bool equality_ruled_out = false;
  const Rational tie_width = default_refine_width();
  while (true) {
    if (ea.hi <= eb.lo) return -1;
    if (eb.hi <= ea.lo) return 1;
    if (!equality_ruled_out && ea.width() <= tie_width && eb.width() <= tie_width) {
      Polynomial g = gcd(sp.square_free(), sq.square_free());
      Rational lo = std::max(ea.lo, eb.lo), hi = std::min(ea.hi, eb.hi);
      if (g.degree() >= 1 && SturmSequence(g).count(lo, hi) > 0) return 0;
      equality_ruled_out = true;
    }
    ea = refine(ea, sp, ea.width() / 2);
    eb = refine(eb, sq, eb.width() / 2);
  }
}

/// Least real root, or nullopt when p has none.
inline std::optional<RootEnclosure> least_real_root(const Polynomial& p) {
  auto roots = real_roots(p);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

/// The chain of minimal real roots lambda_j of phi(k, t, j), j = 1..k+1.
struct LambdaChain {
  std::size_t k = 0;
  Rational t;
  std::vector<RootEnclosure> roots;  ///< roots[j-1] encloses lambda_j; pairwise disjoint when decreasing
  bool all_in_unit_interval = false; ///< every lambda_j certified in (0, 1] and simple
  bool strictly_decreasing = false;
  std::optional<std::size_t> failed_j;
  std::string message;
};

/// Computes lambda_1..lambda_{k+1}, certifies each simple and in (0, 1], and
/// decides lambda_1 > ... > lambda_{k+1} by disjoint exact enclosures.
inline LambdaChain lambda_chain(std::size_t k, const Rational& t) {
  require_open_unit(t);
  LambdaChain out;
  out.k = k;
  out.t = t;
  std::vector<Polynomial> polys;
  for (std::size_t j = 1; j <= k + 1; ++j) {
    Polynomial p = phi(k, t, j);
    auto least = least_real_root(p);
    if (!least) {
      out.failed_j = j;
      out.message = "phi_" + std::to_string(j) + " has no real root";
      return out;
    }
    SturmSequence s(p);
    RootEnclosure e = *least;
    // pull the enclosure inside (0, 1]: split at 0 and at 1
    if (e.lo < 0) {
      if (s.count(e.lo, 0) > 0) {
        out.failed_j = j;
        out.message = "phi_" + std::to_string(j) + " has a nonpositive real root";
        return out;
      }
      e.lo = 0;
    }
    if (e.hi > 1) {
      if (s.count(e.lo, 1) == 0) {
        out.failed_j = j;
        out.message = "least real root of phi_" + std::to_string(j) + " exceeds 1";
        return out;
      }
      e.hi = 1;
    }
    if (!e.multiplicity_simple) {
      out.failed_j = j;
      out.message = "lambda_" + std::to_string(j) + " is a multiple root";
      return out;
    }
    out.roots.push_back(e);
    polys.push_back(std::move(p));
  }
  out.all_in_unit_interval = true;
  out.strictly_decreasing = true;
  for (std::size_t j = 1; j < out.roots.size(); ++j) {
    if (compare_roots(polys[j], out.roots[j], polys[j - 1], out.roots[j - 1]) >= 0) {
      out.strictly_decreasing = false;
      out.failed_j = j + 1;
      out.message = "lambda_" + std::to_string(j + 1) + " >= lambda_" + std::to_string(j);
      break;
    }
    // keep enclosures that separate the pair: (lo_j, hi_j] lies left of lo_{j-1}
    SturmSequence below(polys[j]), above(polys[j - 1]);
    while (out.roots[j].hi > out.roots[j - 1].lo) {
      out.roots[j] = refine(out.roots[j], below, out.roots[j].width() / 2);
      out.roots[j - 1] = refine(out.roots[j - 1], above, out.roots[j - 1].width() / 2);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complex roots

struct ComplexRoot {
  Real re;
  Real im;
  Real residual;  ///< |p(root)|
  bool suspected_multiple = false;
  unsigned multiplicity = 1;
};

struct AberthOptions {
  unsigned max_iterations = 1000;
  /// Converged when every step is below step_tolerance * max(1, |z|).
  Real step_tolerance = Real("1e-20");
  /// Residual certificate: |p(z)| <= residual_tolerance * sum |c_i| |z|^i.
  Real residual_tolerance = Real("1e-30");
  /// Roots closer than this are flagged as suspected multiples.
  Real cluster_distance = Real("1e-12");
  /// Retry at 120 and then 300 decimal digits when 50 digits do not converge
  /// or do not certify (tight root clusters need the extra digits).
  bool escalate = true;
};

class RootFindError : public std::runtime_error {
 public:
  RootFindError(const std::string& what, std::vector<ComplexRoot> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<ComplexRoot>& partial() const { return partial_; }

 private:
  std::vector<ComplexRoot> partial_;
};

namespace detail {

template <unsigned Digits>
struct Precision {
  using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;
  using Cplx = boost::multiprecision::number<
      boost::multiprecision::complex_adaptor<boost::multiprecision::cpp_bin_float<Digits>>>;
};

template <class F>
F to_float(const Rational& r) {
  return F(r.get_num().get_str()) / F(r.get_den().get_str());
}

template <class C>
std::pair<C, C> horner(const std::vector<C>& c, const C& z) {
  C v = c.back(), d = 0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    d = d * z + v;
    v = v * z + c[i];
  }
  return {v, d};
}

template <class F>
F abs_scale(const std::vector<F>& abs_coeffs, const F& r) {
  F acc = 0;
  for (std::size_t i = abs_coeffs.size(); i-- > 0;) acc = acc * r + abs_coeffs[i];
  return acc;
}

struct AberthOutcome {
  std::vector<ComplexRoot> roots;
  bool converged = false;
  bool certified = false;
};

template <unsigned Digits>
AberthOutcome aberth(const Polynomial& p, const AberthOptions& opt) {
  using F = typename Precision<Digits>::Float;
  using C = typename Precision<Digits>::Cplx;
  const std::size_t n = static_cast<std::size_t>(p.degree());

  // roots at zero are split off exactly
  std::size_t zeros = 0;
  while (p.coeffs()[zeros] == 0) ++zeros;
  std::vector<C> c;
  std::vector<F> abs_c;
  for (std::size_t i = zeros; i <= n; ++i) {
    F r = to_float<F>(p.coeffs()[i]);
    c.emplace_back(r);
    abs_c.push_back(abs(r));
  }
  const std::size_t m = n - zeros;
  const F step_tol(opt.step_tolerance);

  std::vector<C> z(m);
  if (m > 0) {
    F radius = pow(abs_c.front() / abs_c.back(), F(1) / F(m));
    const F two_pi = 2 * boost::math::constants::pi<F>();
    for (std::size_t i = 0; i < m; ++i) {
      F angle = two_pi * F(i) / F(m) + F("0.4");
      z[i] = C(radius * cos(angle), radius * sin(angle));
    }
  }

  AberthOutcome out;
  out.converged = m == 0;
  for (unsigned iter = 0; iter < opt.max_iterations && !out.converged; ++iter) {
    F worst = 0;
    for (std::size_t i = 0; i < m; ++i) {
      auto [v, d] = horner(c, z[i]);
      if (v == C(0)) continue;
      C ratio = v / d;
      C repulsion = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) repulsion += C(1) / (z[i] - z[j]);
      C step = ratio / (C(1) - ratio * repulsion);
      z[i] -= step;
      F rel = abs(step) / std::max(F(1), F(abs(z[i])));
      worst = std::max(worst, rel);
    }
    out.converged = worst < step_tol;
  }

  struct Work {
    F re, im;
  };
  std::vector<Work> w;
  for (std::size_t i = 0; i < zeros; ++i) w.push_back({F(0), F(0)});
  for (const auto& zi : z) w.push_back({zi.real(), zi.imag()});

  // conjugate pairing
  std::vector<bool> paired(w.size(), false);
  for (std::size_t i = zeros; i < w.size(); ++i) {
    if (paired[i]) continue;
    paired[i] = true;
    const F mag = std::max(F(1), F(hypot(w[i].re, w[i].im)));
    if (abs(w[i].im) <= step_tol * mag) {
      w[i].im = 0;
      continue;
    }
    std::size_t best = w.size();
    F best_dist = 0;
    for (std::size_t j = zeros; j < w.size(); ++j) {
      if (paired[j]) continue;
      F dist = hypot(w[j].re - w[i].re, w[j].im + w[i].im);
      if (best == w.size() || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    // unpaired roots are left as found; the residual check judges them
    if (best == w.size() || best_dist > F("1e-10") * mag) continue;
    paired[best] = true;
    F re = (w[i].re + w[best].re) / 2;
    F im = (abs(w[i].im) + abs(w[best].im)) / 2;
    w[i].re = w[best].re = re;
    w[i].im = w[i].im > 0 ? im : F(-im);
    w[best].im = -w[i].im;
  }

  std::vector<C> full;
  std::vector<F> full_abs;
  for (const auto& x : p.coeffs()) {
    F r = to_float<F>(x);
    full.emplace_back(r);
    full_abs.push_back(abs(r));
  }
  const F res_tol(opt.residual_tolerance);
  out.certified = true;
  for (const auto& x : w) {
    C zr(x.re, x.im);
    F residual = abs(horner(full, zr).first);
    if (residual > res_tol * abs_scale(full_abs, F(abs(zr)))) out.certified = false;
    out.roots.push_back({Real(x.re), Real(x.im), Real(residual)});
  }
  auto& roots = out.roots;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (hypot(roots[i].re - roots[j].re, roots[i].im - roots[j].im) < opt.cluster_distance)
        roots[i].suspected_multiple = roots[j].suspected_multiple = true;

  std::sort(roots.begin(), roots.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return out;
}

}  // namespace detail

/// All deg(p) complex roots by Aberth-Ehrlich iteration. Initial guesses are
/// fixed angles on the circle of radius |c_0 / c_deg|^(1/deg), so the output
/// is deterministic. Real-coefficient input yields a conjugation-closed
/// multiset, sorted by (re, im).
inline std::vector<ComplexRoot> complex_roots(const Polynomial& p, const AberthOptions& opt = {}) {
  if (p.degree() < 1) throw std::invalid_argument("complex_roots needs degree >= 1");
  auto run = detail::aberth<50>(p, opt);
  if (opt.escalate && !(run.converged && run.certified)) run = detail::aberth<120>(p, opt);
  if (opt.escalate && !(run.converged && run.certified)) run = detail::aberth<300>(p, opt);
  if (!run.converged)
    throw RootFindError("Aberth iteration did not converge in " +
                            std::to_string(opt.max_iterations) + " iterations",
                        std::move(run.roots));
  if (!run.certified) throw RootFindError("root residual above tolerance", std::move(run.roots));
  return std::move(run.roots);
}

/// Distinct complex roots: the roots of the square-free part of p. Simultaneous
/// iteration converges slowly and inaccurately at multiple roots.
inline std::vector<ComplexRoot> complex_roots_square_free(const Polynomial& p,
                                                          const AberthOptions& opt = {}) {
  Polynomial sf = square_free_part(p);
  if (sf.degree() == p.degree()) return complex_roots(p, opt);
  return complex_roots(sf, opt);
}

/// Distinct complex roots with exact multiplicities from the square-free
/// decomposition, sorted by (re, im).
inline std::vector<ComplexRoot> complex_roots_with_multiplicity(const Polynomial& p,
                                                                const AberthOptions& opt = {}) {
  if (p.degree() < 1) throw std::invalid_argument("complex_roots needs degree >= 1");
  std::vector<ComplexRoot> out;
  for (const auto& [factor, mult] : square_free_decomposition(p))
    for (auto r : complex_roots(factor, opt)) {
      r.multiplicity = mult;
      out.push_back(std::move(r));
    }
  std::sort(out.begin(), out.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return out;
}

}  // namespace gkktau
