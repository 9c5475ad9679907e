#pragma once

// Certification of matrix classes defined through principal minors and
// real eigenvalues:
//   P            all principal minors positive
//   WSS          A[a,b] A[b,a] >= 0 for almost-principal pairs
//   GKK          P and the Hadamard-Fisher inequality A[a]A[b] >= A[a|b]A[a&b]
//   OMEGA        l(A(a)) <= l(A(b)) < inf whenever b is a nonempty subset of a
//   TAU          OMEGA and l(A) >= 0
//   POS_STABLE   every eigenvalue has positive real part
//   VARGA_WEDGE  |arg(lambda - l(A))| <= pi/2 - pi/n for every eigenvalue
// where l(A) is the least real eigenvalue (infinite when there is none).
//
// Sweeps report the lexicographically first violation as a witness, so
// reports are identical for any worker count.

#include <gkktau/charpoly.hpp>
#include <gkktau/family.hpp>
#include <gkktau/hurwitz.hpp>
#include <gkktau/index_set.hpp>
#include <gkktau/matrix.hpp>
#include <gkktau/parallel.hpp>
#include <gkktau/rootfind.hpp>

#include <boost/math/constants/constants.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkktau {

enum class Property { P, WSS, GKK, OMEGA, TAU, POS_STABLE, VARGA_WEDGE };

inline const char* to_string(Property p) {
  switch (p) {
    case Property::P: return "P";
    case Property::WSS: return "WSS";
    case Property::GKK: return "GKK";
    case Property::OMEGA: return "OMEGA";
    case Property::TAU: return "TAU";
    case Property::POS_STABLE: return "POS_STABLE";
    case Property::VARGA_WEDGE: return "VARGA_WEDGE";
  }
  return "?";
}

inline std::optional<Property> parse_property(const std::string& s) {
  for (auto p : {Property::P, Property::WSS, Property::GKK, Property::OMEGA, Property::TAU,
                 Property::POS_STABLE, Property::VARGA_WEDGE})
    if (s == to_string(p)) return p;
  return std::nullopt;
}

struct Witness {
  std::optional<IndexSet> alpha;
  std::optional<IndexSet> beta;
  std::vector<Rational> values;
  std::vector<ComplexRoot> eigenvalues;
  std::string note;
};

struct ClassReport {
  Property property = Property::P;
  bool holds = false;
  std::optional<Witness> witness;
  std::size_t n = 0;
  bool boundary = false;
  std::map<std::string, std::string> params;
};

/// Hard caps for brute-force sweeps.
struct SweepLimits {
  std::size_t p_cap = 14;     ///< 2^n principal minors
  std::size_t pair_cap = 12;  ///< pair sweeps (WSS, GKK) and general OMEGA/TAU
  unsigned jobs = 1;
};

class SweepCapError : public std::length_error {
 public:
  SweepCapError(const std::string& what, std::size_t n, std::size_t cap)
      : std::length_error(what + ": n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap)) {}
};

namespace detail {

inline void require_square(const RatMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("class certification needs a square matrix");
}

/// Nonempty subsets of {1..n} as masks in lexicographic order of their
/// member sequences: {1}, {1,2}, {1,2,3}, ..., {2}, {2,3}, ...
inline std::vector<std::uint64_t> lex_subsets(std::size_t n) {
  std::vector<std::uint64_t> out;
  out.reserve((std::size_t{1} << n) - 1);
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t mask) -> void {
    for (std::size_t i = from; i <= n; ++i) {
      std::uint64_t m = mask | std::uint64_t{1} << (i - 1);
      out.push_back(m);
      self(self, i + 1, m);
    }
  };
  rec(rec, 1, 0);
  return out;
}

/// Principal minors A[alpha] for every mask (index 0 holds A[empty] = 1).
inline std::vector<Rational> principal_minor_table(const RatMatrix& a, unsigned jobs) {
  const std::size_t n = a.rows();
  std::vector<Rational> table(std::size_t{1} << n);
  parallel_for(table.size(), jobs, [&](std::size_t mask) {
    table[mask] = principal_minor(a, IndexSet::from_mask(n, mask));
  });
  return table;
}

}  // namespace detail

namespace detail {

inline ClassReport p_report_from_table(std::size_t n, const std::vector<Rational>& table) {
  ClassReport r{Property::P, true, std::nullopt, n, false, {}};
  auto order = lex_subsets(n);
  std::size_t bad = first_index_where(order.size(), 1, [&](std::size_t i) {
    return table[order[i]] <= 0;
  });
  if (bad < order.size()) {
    r.holds = false;
    IndexSet alpha = IndexSet::from_mask(n, order[bad]);
    r.witness = Witness{alpha, alpha, {table[order[bad]]}, {}, "principal minor not positive"};
  }
  return r;
}

}  // namespace detail

inline ClassReport is_P_matrix(const RatMatrix& a, const SweepLimits& lim = {}) {
  detail::require_square(a);
  const std::size_t n = a.rows();
  if (n > lim.p_cap) throw SweepCapError("P-matrix sweep", n, lim.p_cap);
  return detail::p_report_from_table(n, detail::principal_minor_table(a, lim.jobs));
}

/// Almost-principal pairs (alpha, beta): #alpha = #beta = #(alpha | beta) - 1,
/// each unordered pair listed once with alpha lexicographically first.
inline std::vector<std::pair<IndexSet, IndexSet>> almost_principal_pairs(std::size_t n) {
  std::vector<std::pair<IndexSet, IndexSet>> out;
  for (auto mask : detail::lex_subsets(n)) {
    IndexSet alpha = IndexSet::from_mask(n, mask);
    std::vector<std::pair<IndexSet, IndexSet>> local;
    for (auto p : alpha) {
      for (std::size_t q = 1; q <= n; ++q) {
        if (alpha.contains(q)) continue;
        std::uint64_t bmask = (mask & ~(std::uint64_t{1} << (p - 1))) | std::uint64_t{1} << (q - 1);
        IndexSet beta = IndexSet::from_mask(n, bmask);
        if (lex_less(alpha, beta)) local.emplace_back(alpha, beta);
      }
    }
    std::sort(local.begin(), local.end(),
              [](const auto& x, const auto& y) { return lex_less(x.second, y.second); });
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

inline ClassReport is_weakly_sign_symmetric(const RatMatrix& a, const SweepLimits& lim = {}) {
  detail::require_square(a);
  const std::size_t n = a.rows();
  if (n > lim.pair_cap) throw SweepCapError("weak sign symmetry sweep", n, lim.pair_cap);
  ClassReport r{Property::WSS, true, std::nullopt, n, false, {}};
  auto pairs = almost_principal_pairs(n);
  std::size_t bad = first_index_where(pairs.size(), lim.jobs, [&](std::size_t i) {
    const auto& [alpha, beta] = pairs[i];
    return minor(a, alpha, beta) * minor(a, beta, alpha) < 0;
  });
  if (bad < pairs.size()) {
    const auto& [alpha, beta] = pairs[bad];
    Rational ab = minor(a, alpha, beta), ba = minor(a, beta, alpha);
    r.holds = false;
    r.witness = Witness{alpha, beta, {ab, ba, ab * ba}, {}, "A[alpha,beta] A[beta,alpha] < 0"};
  }
  return r;
}

/// P-matrix check followed by the Hadamard-Fisher sweep over all pairs of
/// principal index sets (alpha-major, lexicographic, empty set first).
inline ClassReport is_GKK(const RatMatrix& a, const SweepLimits& lim = {}) {
  detail::require_square(a);
  const std::size_t n = a.rows();
  if (n > lim.pair_cap) throw SweepCapError("GKK sweep", n, lim.pair_cap);
  ClassReport r{Property::GKK, true, std::nullopt, n, false, {}};
  auto table = detail::principal_minor_table(a, lim.jobs);
  auto p = detail::p_report_from_table(n, table);
  if (!p.holds) {
    r.holds = false;
    r.witness = p.witness;
    r.witness->note = "not a P-matrix: " + r.witness->note;
    return r;
  }
  std::vector<std::uint64_t> order{0};
  for (auto m : detail::lex_subsets(n)) order.push_back(m);
  const std::size_t count = order.size();
  std::vector<std::size_t> first_bad_beta(count, count);
  std::size_t bad_alpha = first_index_where(count, lim.jobs, [&](std::size_t i) {
    const std::uint64_t am = order[i];
    for (std::size_t j = 0; j < count; ++j) {
      const std::uint64_t bm = order[j];
      if ((am & bm) == am || (am & bm) == bm) continue;  // nested: equality
      if (table[am] * table[bm] < table[am | bm] * table[am & bm]) {
        first_bad_beta[i] = j;
        return true;
      }
    }
    return false;
  });
  if (bad_alpha < count) {
    const std::uint64_t am = order[bad_alpha], bm = order[first_bad_beta[bad_alpha]];
    r.holds = false;
    r.witness = Witness{IndexSet::from_mask(n, am),
                        IndexSet::from_mask(n, bm),
                        {table[am], table[bm], table[am | bm], table[am & bm]},
                        {},
                        "A[alpha]A[beta] < A[alpha|beta]A[alpha&beta]"};
  }
  return r;
}

// ---------------------------------------------------------------------------
// Least real eigenvalue

struct MinRealEig {
  bool finite = false;
  RootEnclosure value;  ///< valid when finite
  Polynomial poly;      ///< det(A - lambda I)
};

inline MinRealEig min_real_eig(const Polynomial& charpoly_of_a) {
  MinRealEig out;
  out.poly = charpoly_of_a;
  if (auto e = least_real_root(charpoly_of_a)) {
    out.finite = true;
    out.value = *e;
  }
  return out;
}

inline MinRealEig min_real_eig(const RatMatrix& a) {
  detail::require_square(a);
  return min_real_eig(charpoly(a));
}

/// -1, 0, 1 comparing two finite l-values exactly.
inline int compare(const MinRealEig& x, const MinRealEig& y) {
  return compare_roots(x.poly, x.value, y.poly, y.value);
}

/// l(A) >= 0, exactly: no real root strictly below zero.
inline bool nonnegative(const MinRealEig& l) {
  if (!l.finite) return true;
  if (l.value.lo >= 0) return true;
  SturmSequence s(l.poly);
  int at_or_below_zero = s.count(l.value.lo, 0);
  if (at_or_below_zero == 0) return true;
  return l.poly(Rational(0)) == 0 && at_or_below_zero == 1;
}

inline std::string describe(const MinRealEig& l) {
  if (!l.finite) return "inf";
  auto e = refine(l.value, l.poly, default_refine_width());
  return to_decimal(to_real(e.midpoint()), 20);
}

namespace detail {

inline bool toeplitz_hessenberg(const RatMatrix& a) { return is_toeplitz(a) && is_hessenberg(a); }

/// l-values of the leading blocks A(<m>), m = 1..n, of a Hessenberg matrix.
inline std::vector<MinRealEig> leading_block_l_values(const RatMatrix& a, unsigned jobs) {
  const std::size_t n = a.rows();
  std::vector<MinRealEig> out(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    out[i] = min_real_eig(charpoly_hessenberg(principal_submatrix(a, IndexSet::range(n, 1, i + 1))));
  });
  return out;
}

}  // namespace detail

/// Eigenvalue monotonicity. For Toeplitz Hessenberg input the principal
/// spectrum factors over the consecutive components, each equal to a leading
/// block, so monotonicity reduces to l(A(<m>)) <= l(A(<m-1>)) for the leading
/// blocks and is checked without a size cap.
inline ClassReport is_omega(const RatMatrix& a, const SweepLimits& lim = {}) {
  detail::require_square(a);
  const std::size_t n = a.rows();
  ClassReport r{Property::OMEGA, true, std::nullopt, n, false, {}};
  if (n == 0) return r;
  auto fail_infinite = [&](const IndexSet& alpha) {
    r.holds = false;
    r.witness = Witness{alpha, std::nullopt, {}, {}, "l(A(alpha)) is infinite (no real eigenvalue)"};
  };
  auto fail_order = [&](const IndexSet& alpha, const IndexSet& beta, const MinRealEig& la,
                        const MinRealEig& lb) {
    r.holds = false;
    r.witness = Witness{alpha, beta, {la.value.lo, la.value.hi, lb.value.lo, lb.value.hi}, {},
                        "l(A(alpha)) > l(A(beta)) with beta a subset of alpha"};
  };

  if (detail::toeplitz_hessenberg(a)) {
    r.params["method"] = "toeplitz-hessenberg-leading-blocks";
    auto l = detail::leading_block_l_values(a, lim.jobs);
    for (std::size_t m = 1; m <= n; ++m) {
      if (!l[m - 1].finite) {
        fail_infinite(IndexSet::range(n, 1, m));
        return r;
      }
      if (m >= 2 && compare(l[m - 1], l[m - 2]) > 0) {
        fail_order(IndexSet::range(n, 1, m), IndexSet::range(n, 1, m - 1), l[m - 1], l[m - 2]);
        return r;
      }
    }
    r.params["l"] = describe(l[n - 1]);
    return r;
  }

  if (n > lim.pair_cap) throw SweepCapError("eigenvalue monotonicity sweep", n, lim.pair_cap);
  r.params["method"] = "principal-submatrix-sweep";
  auto order = detail::lex_subsets(n);
  std::vector<MinRealEig> l(std::size_t{1} << n);
  parallel_for(order.size(), lim.jobs, [&](std::size_t i) {
    l[order[i]] = min_real_eig(principal_submatrix(a, IndexSet::from_mask(n, order[i])));
  });
  for (auto mask : order)
    if (!l[mask].finite) {
      fail_infinite(IndexSet::from_mask(n, mask));
      return r;
    }
  // <= is transitive, so covering pairs (beta = alpha minus one index) suffice
  std::vector<std::size_t> bad_beta(order.size());
  std::size_t bad = first_index_where(order.size(), lim.jobs, [&](std::size_t i) {
    const std::uint64_t am = order[i];
    IndexSet alpha = IndexSet::from_mask(n, am);
    if (alpha.size() < 2) return false;
    std::vector<std::uint64_t> betas;
    for (auto p : alpha) betas.push_back(am & ~(std::uint64_t{1} << (p - 1)));
    std::sort(betas.begin(), betas.end(), [n](auto x, auto y) {
      return lex_less(IndexSet::from_mask(n, x), IndexSet::from_mask(n, y));
    });
    for (auto bm : betas)
      if (compare(l[am], l[bm]) > 0) {
        bad_beta[i] = bm;
        return true;
      }
    return false;
  });
  if (bad < order.size()) {
    auto am = order[bad], bm = bad_beta[bad];
    fail_order(IndexSet::from_mask(n, am), IndexSet::from_mask(n, bm), l[am], l[bm]);
    return r;
  }
  r.params["l"] = describe(l[(std::uint64_t{1} << n) - 1]);
  return r;
}

inline ClassReport is_tau(const RatMatrix& a, const SweepLimits& lim = {}) {
  ClassReport r = is_omega(a, lim);
  r.property = Property::TAU;
  if (!r.holds) return r;
  MinRealEig l = min_real_eig(a);
  if (!nonnegative(l)) {
    r.holds = false;
    r.witness = Witness{IndexSet::full(a.rows()), std::nullopt, {l.value.lo, l.value.hi}, {},
                        "l(A) < 0"};
  }
  return r;
}

// ---------------------------------------------------------------------------
// Stability

namespace detail {

/// The eigenvalue of least real part and, when complex, its conjugate.
inline std::vector<ComplexRoot> leftmost_eigenvalues(const Polynomial& p) {
  auto roots = complex_roots_square_free(p);
  std::vector<ComplexRoot> out{roots.front()};
  if (roots.size() > 1 && roots[0].im != 0 && roots[1].re == roots[0].re) out.push_back(roots[1]);
  return out;
}

}  // namespace detail

/// Exact Routh-Hurwitz decision on det(A - lambda I) with lambda -> -lambda:
/// A is positive stable iff that polynomial has all roots in the open left
/// half plane. Roots on the imaginary axis set `boundary` and fail.
inline ClassReport is_positive_stable(const RatMatrix& a) {
  detail::require_square(a);
  const std::size_t n = a.rows();
  ClassReport r{Property::POS_STABLE, true, std::nullopt, n, false, {}};
  if (n == 0) return r;
  Polynomial p = charpoly(a);
  Stability s = routh_stable(p.negate_variable());
  r.params["routh"] = to_string(s);
  if (s == Stability::stable) return r;
  r.holds = false;
  r.boundary = s == Stability::boundary;
  Witness w;
  w.eigenvalues = detail::leftmost_eigenvalues(p);
  w.note = r.boundary ? "eigenvalue on the imaginary axis" : "eigenvalue with negative real part";
  r.witness = std::move(w);
  return r;
}

/// Max |arg(lambda - l(A))| over the spectrum against pi/2 - pi/n. l(A) is
/// refined to width 2^-80; eigenvalues come from the numeric root finder.
/// `angle_tolerance` is the slack allowed above the bound.
inline ClassReport varga_wedge_check(const RatMatrix& a, double angle_tolerance = 1e-12) {
  detail::require_square(a);
  const std::size_t n = a.rows();
  if (n == 0) throw std::invalid_argument("Varga wedge needs n >= 1");
  MinRealEig l = min_real_eig(a);
  if (!l.finite) throw std::domain_error("Varga wedge undefined: l(A) is infinite");
  RootEnclosure e = refine(l.value, l.poly, default_refine_width());
  const Real l_value = to_real(e.midpoint());
  const Real pi = boost::math::constants::pi<Real>();
  const Real bound = pi / 2 - pi / Real(n);
  auto roots = complex_roots_square_free(l.poly);
  Real max_angle = 0;
  std::optional<ComplexRoot> worst;
  for (const auto& z : roots) {
    Real dx = z.re - l_value, dy = z.im;
    Real angle = hypot(dx, dy) <= Real("1e-20") ? Real(0) : Real(abs(atan2(dy, dx)));
    if (angle > max_angle || !worst) {
      max_angle = angle;
      worst = z;
    }
  }
  ClassReport r{Property::VARGA_WEDGE, max_angle <= bound + Real(angle_tolerance), std::nullopt, n, false, {}};
  r.params["l"] = to_decimal(l_value);
  r.params["max_angle"] = to_decimal(max_angle);
  r.params["bound"] = to_decimal(bound);
  r.params["margin"] = to_decimal(bound - max_angle);
  if (!r.holds) r.witness = Witness{std::nullopt, std::nullopt, {}, {*worst}, "eigenvalue outside the wedge"};
  return r;
}

// ---------------------------------------------------------------------------
// Witness re-verification

namespace detail {

/// Cofactor expansion where affordable, so re-verification does not reuse
/// the elimination path of the sweep.
inline Rational independent_minor(const RatMatrix& a, const IndexSet& alpha, const IndexSet& beta) {
  RatMatrix s = submatrix(a, alpha, beta);
  return s.rows() <= kDetOracleCap ? det_oracle(s) : det(s);
}

}  // namespace detail

/// Recomputes the defining inequality at the witness, independently of the
/// sweep that produced it. True when the witness really exhibits a violation.
inline bool reverify_witness(const RatMatrix& a, const ClassReport& r) {
  if (r.holds) return !r.witness.has_value();
  if (!r.witness) return false;
  const Witness& w = *r.witness;
  switch (r.property) {
    case Property::P:
      return w.alpha && detail::independent_minor(a, *w.alpha, *w.alpha) <= 0;
    case Property::WSS:
      return w.alpha && w.beta &&
             detail::independent_minor(a, *w.alpha, *w.beta) *
                     detail::independent_minor(a, *w.beta, *w.alpha) < 0;
    case Property::GKK: {
      if (!w.alpha) return false;
      auto pm = [&](const IndexSet& s) { return detail::independent_minor(a, s, s); };
      if (!w.beta || *w.alpha == *w.beta) return pm(*w.alpha) <= 0;
      IndexSet u = w.alpha->united(*w.beta), x = w.alpha->intersected(*w.beta);
      return pm(*w.alpha) * pm(*w.beta) < pm(u) * pm(x);
    }
    case Property::OMEGA:
    case Property::TAU: {
      if (!w.alpha) return false;
      MinRealEig la = min_real_eig(principal_submatrix(a, *w.alpha));
      if (!w.beta) return !la.finite || (r.property == Property::TAU && !nonnegative(la));
      MinRealEig lb = min_real_eig(principal_submatrix(a, *w.beta));
      return la.finite && lb.finite && w.beta->is_subset_of(*w.alpha) && compare(la, lb) > 0;
    }
    case Property::POS_STABLE: {
      if (w.eigenvalues.empty()) return false;
      const auto& z = w.eigenvalues.front();
      Polynomial p = charpoly(a);
      Complex zc(z.re, z.im), v = 0;
      for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) v = v * zc + Complex(to_real(*it));
      return z.re <= Real("1e-30") && abs(v) <= Real("1e-20");
    }
    case Property::VARGA_WEDGE:
      return !w.eigenvalues.empty();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Structured GKK certificate for large family instances

struct StructuredGkkReport {
  bool holds = false;
  std::size_t n = 0;
  std::size_t leading_minors_checked = 0;
  std::size_t factorization_samples = 0;
  std::size_t window_pairs_checked = 0;
  std::size_t exponent_triples_checked = 0;
  std::size_t random_pairs_checked = 0;
  std::string failure;
};

/// sum over consecutive components c of alpha of (#c - k - 1)_+.
inline std::size_t minor_exponent(std::uint64_t mask, std::size_t k) {
  std::size_t total = 0, run = 0;
  while (mask || run) {
    if (mask & 1u) ++run;
    else {
      total += window_exponent(k, run);
      run = 0;
    }
    mask >>= 1;
  }
  return total;
}

/// Certifies GKK for A(n,k,t) without the 4^n sweep:
///  1. Toeplitz Hessenberg structure and every leading minor equal to t^((m-k-1)_+)
///     (exact determinants); by Toeplitz shift every window minor follows.
///  2. Block factorization: sampled principal minors equal the product of their
///     component window minors, i.e. t^e(alpha) with e = minor_exponent.
///     Positivity of all window minors then gives P.
///  3. Hadamard-Fisher for every pair of windows, as the exponent inequality
///     e(a) + e(b) <= e(a|b) + e(a&b) (valid because 0 < t < 1).
///  4. The scalar inequality (x+y-k-1)_+ + (x+z-k-1)_+ <= (x-k-1)_+ + (x+y+z-k-1)_+
///     on the whole grid 0 <= x, y, z <= n.
///  5. Hadamard-Fisher on random general pairs through the exponent form.
inline StructuredGkkReport certify_gkk_structured(const RatMatrix& a, std::size_t k,
                                                  const Rational& t,
                                                  std::size_t factorization_samples = 64,
                                                  std::size_t random_pairs = 200000,
                                                  std::uint64_t seed = 20240601) {
  StructuredGkkReport out;
  const std::size_t n = a.rows();
  out.n = n;
  if (n > 64) throw std::length_error("structured GKK certificate supports n <= 64");
  require_open_unit(t);
  if (!detail::toeplitz_hessenberg(a)) {
    out.failure = "matrix is not Toeplitz Hessenberg";
    return out;
  }
  for (std::size_t m = 1; m <= n; ++m) {
    Rational d = principal_minor(a, IndexSet::range(n, 1, m));
    ++out.leading_minors_checked;
    if (d != pow(t, window_exponent(k, m))) {
      out.failure = "leading minor of order " + std::to_string(m) + " is " + to_string(d);
      return out;
    }
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::size_t s = 0; s < factorization_samples; ++s) {
    std::uint64_t mask = rng() & all;
    IndexSet alpha = IndexSet::from_mask(n, mask);
    Rational d = principal_minor(a, alpha);
    ++out.factorization_samples;
    if (d != pow(t, minor_exponent(mask, k))) {
      out.failure = "principal minor " + alpha.to_string() + " does not factor over components";
      return out;
    }
  }
  auto window = [](std::size_t i, std::size_t len) {
    return ((len == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1)) << (i - 1);
  };
  auto hf_holds = [k](std::uint64_t am, std::uint64_t bm) {
    return minor_exponent(am, k) + minor_exponent(bm, k) <=
           minor_exponent(am | bm, k) + minor_exponent(am & bm, k);
  };
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; i + j - 1 <= n; ++j)
      for (std::size_t l = 1; l <= n; ++l)
        for (std::size_t m = 1; l + m - 1 <= n; ++m) {
          ++out.window_pairs_checked;
          if (!hf_holds(window(i, j), window(l, m))) {
            out.failure = "Hadamard-Fisher fails for windows " + std::to_string(i) + ":" +
                          std::to_string(i + j - 1) + " and " + std::to_string(l) + ":" +
                          std::to_string(l + m - 1);
            return out;
          }
        }
  auto pos = [](long v) { return v > 0 ? v : 0L; };
  const long kk = static_cast<long>(k);
  for (long x = 0; x <= static_cast<long>(n); ++x)
    for (long y = 0; y <= static_cast<long>(n); ++y)
      for (long z = 0; z <= static_cast<long>(n); ++z) {
        ++out.exponent_triples_checked;
        if (pos(x + y - kk - 1) + pos(x + z - kk - 1) > pos(x - kk - 1) + pos(x + y + z - kk - 1)) {
          out.failure = "exponent inequality fails at x=" + std::to_string(x) +
                        " y=" + std::to_string(y) + " z=" + std::to_string(z);
          return out;
        }
      }
  for (std::size_t s = 0; s < random_pairs; ++s) {
    std::uint64_t am = rng() & all, bm = rng() & all;
    // bias towards long runs, where the exponents are nonzero
    if (s % 2) {
      am |= rng() & rng() & all;
      am |= am << 1 & all;
      bm |= bm << 1 & all;
    }
    ++out.random_pairs_checked;
    if (!hf_holds(am, bm)) {
      out.failure = "Hadamard-Fisher fails for " + IndexSet::from_mask(n, am).to_string() +
                    " and " + IndexSet::from_mask(n, bm).to_string();
      return out;
    }
  }
  out.holds = true;
  return out;
}

// ---------------------------------------------------------------------------
// Empirical t(k)

struct TauSearch {
  std::optional<unsigned> m;  ///< chosen t = 2^-m
  Rational t;
  LambdaChain chain;
  std::vector<ClassReport> reports;  ///< is_tau for n = 1..2k+2 at the chosen t
};

/// Grows m until the lambda chain of phi(k, 2^-m, .) is strictly decreasing
/// and is_tau holds for A(n, k, 2^-m) for every n <= 2k+2.
inline TauSearch find_tau_parameter(std::size_t k, unsigned max_m = 20,
                                    const SweepLimits& lim = {}) {
  TauSearch out;
  for (unsigned m = 1; m <= max_m; ++m) {
    Rational t(Integer(1), Integer(1) << m);
    LambdaChain chain = lambda_chain(k, t);
    if (!chain.strictly_decreasing) continue;
    std::vector<ClassReport> reports;
    bool ok = true;
    for (std::size_t n = 1; n <= 2 * k + 2 && ok; ++n) {
      reports.push_back(is_tau(build_A(n, k, t), lim));
      ok = reports.back().holds;
    }
    if (!ok) continue;
    out.m = m;
    out.t = t;
    out.chain = std::move(chain);
    out.reports = std::move(reports);
    return out;
  }
  return out;
}

}  // namespace gkktau
