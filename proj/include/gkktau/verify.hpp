#pragma once

// End-to-end reproduction pipeline: every check returns pass/fail with the
// measured deviation where there is one.

#include <gkktau/charpoly.hpp>
#include <gkktau/classify.hpp>
#include <gkktau/family.hpp>
#include <gkktau/hurwitz.hpp>
#include <gkktau/rootfind.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gkktau {

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  std::optional<double> deviation;
  double seconds = 0;
};

struct VerifyOptions {
  unsigned jobs = 1;
  std::uint64_t seed = 20240601;
  std::size_t random_corpus = 200;
};

/// Published leftmost eigenvalue pairs (re, |im|).
struct ReferencePair {
  const char* re;
  const char* im;
};
inline constexpr ReferencePair kReferenceA44{"-2.809929189497896e-2", "3.275076252367531e-1"};
inline constexpr ReferencePair kReferenceB21{"-3.420708309454068e-2", "3.400425852703498e-1"};
inline constexpr double kEigenTolerance = 1e-8;

namespace detail {

inline CheckResult timed(std::string id, std::string title, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline void check_leftmost_pair(CheckResult& r, const RatMatrix& a, const ReferencePair& ref) {
  auto roots = complex_roots_square_free(charpoly(a));
  const Real re(ref.re), im(ref.im);
  const Real dev = std::max({abs(roots[0].re - re), abs(abs(roots[0].im) - im), abs(roots[1].re - re),
                             abs(abs(roots[1].im) - im)});
  const bool conjugate = roots[0].re == roots[1].re && roots[0].im == -roots[1].im;
  r.deviation = static_cast<double>(dev);
  r.passed = conjugate && dev <= Real(kEigenTolerance);
  std::ostringstream os;
  os << to_decimal(roots[0].re, 16) << " +- " << to_decimal(abs(roots[0].im), 16) << "i";
  r.detail = os.str();
}

inline RatMatrix random_corpus_matrix(std::mt19937_64& rng, std::size_t n, int kind) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5), off(-3, 3);
  RatMatrix a(n, n);
  if (kind == 0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = make_rational(num(rng), den(rng));
    return a;
  }
  // diagonally dominant with positive diagonal: P, symmetric for kind 1
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) a(i, j) = Rational(static_cast<long>(n));
      else if (kind == 1 && j < i) a(i, j) = a(j, i);
      else a(i, j) = make_rational(off(rng), 4);
    }
  return a;
}

}  // namespace detail

inline std::vector<CheckResult> verify_paper(const VerifyOptions& opt = {}) {
  using detail::timed;
  std::vector<CheckResult> out;
  const Rational half = make_rational(1, 2);
  const std::vector<Rational> ts{make_rational(1, 4), half, make_rational(3, 4)};
  SweepLimits lim;
  lim.jobs = opt.jobs;

  out.push_back(timed("AC1", "leftmost eigenvalues of A(44,21,1/2) and B(21)", [&](CheckResult& r) {
    CheckResult a, b;
    detail::check_leftmost_pair(a, build_A(44, 21, half), kReferenceA44);
    detail::check_leftmost_pair(b, build_B(21), kReferenceB21);
    r.passed = a.passed && b.passed;
    r.deviation = std::max(*a.deviation, *b.deviation);
    r.detail = "A: " + a.detail + "; B: " + b.detail;
  }));

  out.push_back(timed("AC2", "Hurwitz minor [2:5] equals the closed form, k = 3..40", [&](CheckResult& r) {
    long bad = 0;
    for (long k = 3; k <= 40; ++k)
      if (hurwitz_minor_2to5(k) != closed_form_minor(k)) ++bad;
    r.passed = bad == 0;
    r.detail = std::to_string(38 - bad) + "/38 exact matches";
  }));

  out.push_back(timed("AC3", "first k with a negative minor", [&](CheckResult& r) {
    auto scan = threshold_scan(40);
    bool signs = true;
    for (const auto& row : scan.rows) signs = signs && row.sign == (row.k >= 21 ? -1 : 1);
    r.passed = scan.first_negative && *scan.first_negative == 21 && signs;
    r.detail = "first unstable k = " + (scan.first_negative ? std::to_string(*scan.first_negative) : "none");
  }));

  out.push_back(timed("AC4", "defining determinants and window minors", [&](CheckResult& r) {
    std::size_t checked = 0, bad = 0;
    for (std::size_t k = 1; k <= 3; ++k)
      for (const auto& t : ts) {
        for (std::size_t j = 1; k + j + 1 <= 2 * k + 4; ++j, ++checked)
          if (det(build_A(k + j + 1, k, t)) != pow(t, j)) ++bad;
        for (std::size_t n = 1; n <= 2 * k + 4; ++n) {
          auto a = build_A(n, k, t);
          for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; i + j - 1 <= n; ++j, ++checked)
              if (principal_minor(a, IndexSet::range(n, i, i + j - 1)) !=
                  pow(t, static_cast<unsigned long>(positive_part(static_cast<long>(j) - static_cast<long>(k) - 1))))
                ++bad;
        }
      }
    r.passed = bad == 0;
    r.detail = std::to_string(checked - bad) + "/" + std::to_string(checked) + " exact";
  }));

  out.push_back(timed("AC5", "GKK sweep of family matrices, n <= 8", [&](CheckResult& r) {
    std::size_t count = 0, bad = 0;
    for (std::size_t k = 1; k <= 3; ++k)
      for (const auto& t : ts)
        for (std::size_t n = 1; n <= 8; ++n, ++count)
          if (!is_GKK(build_A(n, k, t), lim).holds) ++bad;
    r.passed = bad == 0;
    r.detail = std::to_string(count - bad) + "/" + std::to_string(count) + " GKK";
  }));

  out.push_back(timed("AC6", "GKK iff weakly sign-symmetric P-matrix on a random corpus", [&](CheckResult& r) {
    std::mt19937_64 rng(opt.seed);
    std::size_t agree = 0, gkk = 0;
    for (std::size_t i = 0; i < opt.random_corpus; ++i) {
      auto a = detail::random_corpus_matrix(rng, 1 + i % 6, static_cast<int>(i % 3));
      bool g = is_GKK(a, lim).holds;
      if (g == (is_P_matrix(a, lim).holds && is_weakly_sign_symmetric(a, lim).holds)) ++agree;
      if (g) ++gkk;
    }
    r.passed = agree == opt.random_corpus;
    r.detail = std::to_string(agree) + "/" + std::to_string(opt.random_corpus) + " agree, " +
               std::to_string(gkk) + " GKK";
  }));

  out.push_back(timed("AC7", "tau certification with t = 2^-m, k = 1..3", [&](CheckResult& r) {
    r.passed = true;
    for (std::size_t k = 1; k <= 3; ++k) {
      auto s = find_tau_parameter(k, 20, lim);
      bool ok = s.m.has_value() && s.chain.strictly_decreasing;
      for (const auto& rep : s.reports) ok = ok && rep.holds;
      r.passed = r.passed && ok;
      r.detail += (k > 1 ? ", " : "") + std::string("k=") + std::to_string(k) + ": m=" +
                  (s.m ? std::to_string(*s.m) : "none");
    }
  }));

  out.push_back(timed("AC8", "polynomial identities, k <= 5", [&](CheckResult& r) {
    std::size_t checked = 0, bad = 0;
    auto expect = [&](bool ok) {
      ++checked;
      if (!ok) ++bad;
    };
    const Polynomial oml = Polynomial::one_minus_lambda();
    for (std::size_t k = 1; k <= 5; ++k) {
      for (const auto& t : ts)
        for (std::size_t j = 1; j <= k + 1; ++j) {
          if (j >= 2) {
            expect(phi(k, t, j) == oml * phi(k, t, j - 1) + g_poly(k, t, j));
            Rational a = coeff_a(k, t, j);
            if ((j + k) % 2) a = -a;
            expect(g_poly(k, t, j) == oml * g_poly(k, t, j - 1) + Polynomial::constant(a));
          }
          expect(phi(k, t, j) == charpoly(build_A(k + j + 1, k, t)));
          expect(phi(k, t, j)(Rational(0)) == pow(t, j));
          expect(g_poly(k, t, j)(Rational(0)) == pow(t, j) - pow(t, j - 1));
        }
      for (std::size_t j = 1; j <= k + 1; ++j) {
        const Rational tiny(Integer(1), Integer(1) << 60);
        Rational err = 0;
        const Polynomial diff = phi(k, tiny, j) - nu(k, j);
        for (const auto& c : diff.coeffs()) err = std::max<Rational>(err, abs(c));
        expect(err < Rational(Integer(1), Integer(1) << 50));
        expect(-nu(k, j).derivative()(Rational(0)) == Rational(static_cast<long>(k + 3 - j)));
      }
      expect(psi(k) * Polynomial({1, 1}).pow(static_cast<unsigned>(k - 1)) == nu(k, k + 1).negate_variable());
      expect(eta(k) == eta_display(k));
    }
    r.passed = bad == 0;
    r.detail = std::to_string(checked - bad) + "/" + std::to_string(checked) + " identities";
  }));

  out.push_back(timed("AC9", "A(44,21,1/2) is GKK and tau but not positive stable", [&](CheckResult& r) {
    const auto a = build_A(44, 21, half);
    auto gkk = certify_gkk_structured(a, 21, half);
    auto tau = is_tau(a, lim);
    auto chain = lambda_chain(21, half);
    auto stable = is_positive_stable(a);
    r.passed = gkk.holds && tau.holds && chain.strictly_decreasing && !stable.holds;
    r.detail = std::string("GKK(structured)=") + (gkk.holds ? "yes" : "no: " + gkk.failure) +
               ", tau=" + (tau.holds ? "yes" : "no") +
               ", lambda chain decreasing=" + (chain.strictly_decreasing ? "yes" : "no") +
               ", positive stable=" + (stable.holds ? "yes" : "no");
  }));

  out.push_back(timed("AC10", "Bareiss determinant against cofactor expansion", [&](CheckResult& r) {
    std::size_t checked = 0, bad = 0;
    for (std::size_t k = 1; k <= 3; ++k)
      for (const auto& t : ts)
        for (std::size_t n = 1; n <= 8; ++n, ++checked)
          if (det(build_A(n, k, t)) != det_oracle(build_A(n, k, t))) ++bad;
    std::mt19937_64 rng(opt.seed + 1);
    for (std::size_t i = 0; i < 100; ++i, ++checked) {
      auto a = detail::random_corpus_matrix(rng, 1 + i % 6, 0);
      if (det(a) != det_oracle(a)) ++bad;
    }
    r.passed = bad == 0;
    r.detail = std::to_string(checked - bad) + "/" + std::to_string(checked) + " exact";
  }));

  return out;
}

}  // namespace gkktau
