#pragma once

// Hurwitz matrices, exact Routh-Hurwitz decisions, and the k-scan of the
// sign of the minor H_k[2:5] of the Hurwitz matrix of eta(k).

#include <gkktau/charpoly.hpp>
#include <gkktau/index_set.hpp>
#include <gkktau/matrix.hpp>
#include <gkktau/parallel.hpp>
#include <gkktau/polynomial.hpp>
#include <gkktau/rootfind.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkktau {

struct HurwitzMatrix {
  Polynomial source;
  RatMatrix matrix;
};

/// Order-m Hurwitz arrangement of a degree-m polynomial: entry (i, j)
/// (1-based) is the coefficient of lambda^(m - (2j - i)), zero outside [0, m].
inline HurwitzMatrix build_hurwitz(const Polynomial& p) {
  if (p.degree() < 1) throw std::invalid_argument("Hurwitz matrix of a constant polynomial");
  const long m = p.degree();
  RatMatrix h(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (long i = 1; i <= m; ++i)
    for (long j = 1; j <= m; ++j) {
      long power = m - (2 * j - i);
      if (power >= 0 && power <= m)
        h(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) =
            p.coeff(static_cast<std::size_t>(power));
    }
  return {p, std::move(h)};
}

/// 3k^3 - 49k^2 - 210k - 318, the sign-deciding factor of H_k[2:5].
inline Integer cubic_factor(long k) {
  Integer kk(k);
  return 3 * kk * kk * kk - 49 * kk * kk - 210 * kk - 318;
}

/// -(1/132300) (3k^3-49k^2-210k-318) (k+4)^2 (k+5) C(k+3,2) C(k+3,4) C(k+3,6).
inline Rational closed_form_minor(long k) {
  if (k < 3) throw std::invalid_argument("closed_form_minor needs k >= 3");
  const auto n = static_cast<unsigned long>(k + 3);
  Integer product = cubic_factor(k) * Integer(k + 4) * Integer(k + 4) * Integer(k + 5) *
                    binomial(n, 2) * binomial(n, 4) * binomial(n, 6);
  Rational out(-product, Integer(132300));
  out.canonicalize();
  return out;
}

/// det of rows/columns 2..5 of the Hurwitz matrix of eta(k).
inline Rational hurwitz_minor_2to5(long k) {
  if (k < 3) throw std::invalid_argument("hurwitz_minor_2to5 needs k >= 3 (order >= 5)");
  auto h = build_hurwitz(eta(static_cast<std::size_t>(k)));
  const std::size_t m = h.matrix.rows();
  IndexSet rows = IndexSet::range(m, 2, 5);
  return minor(h.matrix, rows, rows);
}

enum class Stability { stable, unstable, boundary };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::boundary: return "boundary";
  }
  return "?";
}

/// Leading principal minors Delta_1..Delta_m of the Hurwitz matrix of p,
/// after normalizing the leading coefficient to be positive.
inline std::vector<Rational> hurwitz_leading_minors(const Polynomial& p) {
  Polynomial q = p.leading() < 0 ? -p : p;
  auto h = build_hurwitz(q);
  const std::size_t m = h.matrix.rows();
  std::vector<Rational> out;
  for (std::size_t r = 1; r <= m; ++r) {
    IndexSet lead = IndexSet::range(m, 1, r);
    out.push_back(minor(h.matrix, lead, lead));
  }
  return out;
}

/// True when p has a root on the imaginary axis: with p(iy) = E(y) + i O(y),
/// that happens exactly when gcd(E, O) has a real root.
inline bool has_imaginary_axis_root(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  std::vector<Rational> even, odd;
  // i^d cycles 1, i, -1, -i
  for (std::size_t d = 0; d < p.coeffs().size(); ++d) {
    const Rational& c = p.coeffs()[d];
    switch (d % 4) {
      case 0: even.resize(d + 1); even[d] = c; break;
      case 1: odd.resize(d + 1); odd[d] = c; break;
      case 2: even.resize(d + 1); even[d] = -c; break;
      case 3: odd.resize(d + 1); odd[d] = -c; break;
    }
  }
  Polynomial g = gcd(Polynomial(even), Polynomial(odd));
  if (g.is_zero()) return true;
  if (g.degree() < 1) return false;
  return !real_roots(g).empty();
}

/// Exact decision whether every root of p has negative real part.
/// Stable iff all Hurwitz leading minors are positive. Otherwise a root on
/// the imaginary axis gives `boundary`, else `unstable` (a root with
/// positive real part).
inline Stability routh_stable(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("routh_stable of the zero polynomial");
  if (p.degree() < 1) throw std::invalid_argument("routh_stable needs degree >= 1");
  bool all_positive = true;
  for (const auto& d : hurwitz_leading_minors(p))
    if (d <= 0) {
      all_positive = false;
      break;
    }
  if (all_positive) return Stability::stable;
  return has_imaginary_axis_root(p) ? Stability::boundary : Stability::unstable;
}

struct TnnReport {
  bool negative_found = false;
  std::size_t order = 0;
  std::optional<IndexSet> rows;
  std::optional<IndexSet> cols;
  Rational value;
  /// Minors enumerated up to and including the witness (or all of them).
  std::size_t minors_checked = 0;
};

namespace detail {

/// Next combination of `size` indices from 1..n in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t r = c.size();
  for (std::size_t i = r; i-- > 0;) {
    if (c[i] < n - (r - 1 - i)) {
      ++c[i];
      for (std::size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::vector<std::size_t>> all_combinations(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = i + 1;
  do out.push_back(c);
  while (detail::next_combination(c, n));
  return out;
}

/// Laplace expansion over the selected block of an integer matrix.
inline Integer integer_det(const std::vector<Integer>& m, std::size_t n, const std::size_t* rows,
                           const std::size_t* cols, std::size_t r) {
  if (r == 1) return m[(rows[0] - 1) * n + cols[0] - 1];
  std::size_t sub[8];
  Integer acc = 0, d;
  for (std::size_t c = 0; c < r; ++c) {
    const Integer& e = m[(rows[0] - 1) * n + cols[c] - 1];
    if (sgn(e) == 0) continue;
    for (std::size_t i = 0, w = 0; i < r; ++i)
      if (i != c) sub[w++] = cols[i];
    d = integer_det(m, n, rows + 1, sub, r - 1);
    if (c % 2) acc -= e * d;
    else acc += e * d;
  }
  return acc;
}

/// The matrix scaled by the lcm of all denominators. Minors of the scaled
/// matrix have the signs of the original minors.
inline std::optional<std::vector<Integer>> scaled_integers(const RatMatrix& a, std::size_t max_order) {
  if (max_order > 8) return std::nullopt;
  Integer den = 1;
  for (const auto& x : a.entries()) den = lcm(den, x.get_den());
  std::vector<Integer> out;
  out.reserve(a.entries().size());
  for (const auto& x : a.entries()) out.push_back(Integer(x.get_num() * (den / x.get_den())));
  return out;
}

}  // namespace detail

/// Scans all minors of order 1..max_order (by order, then rows, then columns,
/// each lexicographic) and stops at the first negative one. A negative minor
/// certifies H is not totally nonnegative. The witness does not depend on
/// `jobs`.
inline TnnReport tnn_spot_check(const HurwitzMatrix& h, std::size_t max_order = 4,
                                unsigned jobs = 1) {
  const RatMatrix& a = h.matrix;
  const std::size_t n = a.rows();
  if (max_order > n) throw std::invalid_argument("tnn_spot_check order exceeds matrix order");
  const auto scaled = detail::scaled_integers(a, max_order);
  TnnReport out;
  for (std::size_t order = 1; order <= max_order; ++order) {
    const auto combos = detail::all_combinations(n, order);
    const std::size_t count = combos.size();
    // first negative column combination for each row combination
    std::vector<std::size_t> first_col(count, count);
    auto negative_in_row = [&](std::size_t ri) {
      const auto& rows = combos[ri];
      for (std::size_t ci = 0; ci < count; ++ci) {
        const auto& cols = combos[ci];
        bool zero_row = false;
        for (auto r : rows) {
          bool any = false;
          for (auto c : cols)
            if (a(r - 1, c - 1) != 0) {
              any = true;
              break;
            }
          if (!any) {
            zero_row = true;
            break;
          }
        }
        if (zero_row) continue;
        bool negative = scaled ? sgn(detail::integer_det(*scaled, n, rows.data(), cols.data(), order)) < 0
                             : minor(a, IndexSet(n, rows), IndexSet(n, cols)) < 0;
        if (negative) {
          first_col[ri] = ci;
          return true;
        }
      }
      return false;
    };
    std::size_t ri = first_index_where(count, jobs, negative_in_row);
    if (ri < count) {
      const std::size_t ci = first_col[ri];
      IndexSet rs(n, combos[ri]), cs(n, combos[ci]);
      out.negative_found = true;
      out.order = order;
      out.value = minor(a, rs, cs);
      out.rows = std::move(rs);
      out.cols = std::move(cs);
      out.minors_checked += ri * count + ci + 1;
      return out;
    }
    out.minors_checked += count * count;
  }
  return out;
}

struct ScanRow {
  long k = 0;
  Integer cubic;
  Rational minor_value;
  int sign = 0;
};

struct ThresholdScan {
  std::optional<long> first_negative;
  std::vector<ScanRow> rows;  ///< k = 3..k_max
};

/// Sign table of H_k[2:5] for k = 3..k_max and the least k where it is negative.
inline ThresholdScan threshold_scan(long k_max) {
  if (k_max < 21) throw std::invalid_argument("scan range below known threshold: k_max must be >= 21");
  ThresholdScan out;
  for (long k = 3; k <= k_max; ++k) {
    ScanRow row{k, cubic_factor(k), closed_form_minor(k), 0};
    row.sign = sgn(row.minor_value);
    if (row.sign < 0 && !out.first_negative) out.first_negative = k;
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// CSV: k,cubic_factor,minor_value,sign
inline void write_scan_csv(std::ostream& os, const ThresholdScan& scan) {
  os << "k,cubic_factor,minor_value,sign\n";
  for (const auto& r : scan.rows)
    os << r.k << ',' << r.cubic.get_str() << ',' << to_string(r.minor_value) << ','
       << (r.sign < 0 ? "-" : r.sign > 0 ? "+" : "0") << '\n';
}

}  // namespace gkktau
