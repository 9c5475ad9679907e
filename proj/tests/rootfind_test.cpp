#include <gkktau/charpoly.hpp>
#include <gkktau/family.hpp>
#include <gkktau/rootfind.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gkktau;

namespace {

const Rational half = make_rational(1, 2);

Polynomial from_roots(const std::vector<std::pair<Rational, unsigned>>& roots) {
  Polynomial p{1};
  for (const auto& [r, m] : roots) p = p * Polynomial({Rational(-r), 1}).pow(m);
  return p;
}

bool encloses(const RootEnclosure& e, const Rational& x) { return e.lo < x && x <= e.hi; }

double nearest_distance(const ComplexRoot& r, const std::vector<ComplexRoot>& set) {
  double best = 1e300;
  for (const auto& s : set)
    best = std::min(best, static_cast<double>(hypot(r.re - s.re, r.im - s.im)));
  return best;
}

}  // namespace

TEST(SturmIsolate, Examples) {
  auto roots = sturm_isolate(Polynomial({-1, 0, 1}), Rational(-2), Rational(2));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_TRUE(encloses(roots[0], Rational(-1)));
  EXPECT_TRUE(encloses(roots[1], Rational(1)));
  EXPECT_THROW(sturm_isolate(Polynomial(), Rational(0), Rational(1)), std::invalid_argument);
}

TEST(SturmIsolate, CubeRootOfHalf) {
  auto roots = sturm_isolate(phi(1, half, 1), Rational(0), Rational(1));
  ASSERT_EQ(roots.size(), 1u);
  auto e = refine(roots[0], phi(1, half, 1), default_refine_width());
  // (1 - x)^3 - 1/2 is decreasing: positive left of the root, nonpositive at hi
  auto f = [](const Rational& x) { return Rational((1 - x) * (1 - x) * (1 - x) - half); };
  EXPECT_GT(f(e.lo), 0);
  EXPECT_LE(f(e.hi), 0);
  EXPECT_NEAR(e.midpoint().get_d(), 1 - std::cbrt(0.5), 1e-15);
  EXPECT_NEAR(e.midpoint().get_d(), 0.20630, 1e-5);
}

TEST(SturmIsolate, ZeroIsSimpleLeastRootOfNu) {
  for (std::size_t k = 1; k <= 5; ++k)
    for (std::size_t j = 1; j <= k + 1; ++j) {
      auto roots = real_roots(nu(k, j));
      ASSERT_FALSE(roots.empty());
      EXPECT_TRUE(encloses(roots.front(), Rational(0))) << k << ' ' << j;
      EXPECT_TRUE(roots.front().multiplicity_simple);
      auto e = refine(roots.front(), nu(k, j), default_refine_width());
      EXPECT_TRUE(encloses(e, Rational(0)));
    }
}

TEST(SturmIsolate, CountsAndMultiplicities) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 6);
  std::uniform_int_distribution<unsigned> mult(1, 3);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<std::pair<Rational, unsigned>> planted;
    std::vector<Rational> seen;
    const int count = 1 + rep % 5;
    while (static_cast<int>(planted.size()) < count) {
      Rational r = make_rational(num(rng), den(rng));
      if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
      seen.push_back(r);
      planted.push_back({r, mult(rng)});
    }
    // an irreducible quadratic factor adds no real roots
    Polynomial p = from_roots(planted) * Polynomial({3, 1, 1});
    SturmSequence s(p);
    Rational b = cauchy_bound(p);
    EXPECT_EQ(s.count(-b, b), count);
    auto roots = real_roots(p);
    ASSERT_EQ(roots.size(), planted.size());
    std::sort(planted.begin(), planted.end());
    for (std::size_t i = 0; i < roots.size(); ++i) {
      EXPECT_TRUE(encloses(roots[i], planted[i].first));
      EXPECT_EQ(roots[i].multiplicity, planted[i].second);
      EXPECT_EQ(roots[i].multiplicity_simple, planted[i].second == 1);
    }
  }
}

TEST(Refine, WidthAndInvariance) {
  auto p = phi(1, half, 1);
  auto e = sturm_isolate(p, Rational(0), Rational(1)).front();
  auto narrow = refine(e, p, default_refine_width());
  EXPECT_LE(narrow.width(), default_refine_width());
  EXPECT_EQ(SturmSequence(p).count(narrow.lo, narrow.hi), 1);
  auto again = refine(narrow, p, Rational(1));
  EXPECT_EQ(again.lo, narrow.lo);
  EXPECT_EQ(again.hi, narrow.hi);
}

TEST(CompareRoots, OrdersAndDetectsTies) {
  Polynomial p({-2, 0, 1});       // sqrt 2
  Polynomial q = p * Polynomial({-5, 1});
  auto ep = real_roots(p).back(), eq = real_roots(q)[1];
  EXPECT_EQ(compare_roots(p, ep, q, eq), 0);
  Polynomial r({-3, 0, 1});       // sqrt 3
  auto er = real_roots(r).back();
  EXPECT_EQ(compare_roots(p, ep, r, er), -1);
  EXPECT_EQ(compare_roots(r, er, p, ep), 1);
}

TEST(LambdaChain, SmallT) {
  auto chain = lambda_chain(1, make_rational(1, 100));
  EXPECT_TRUE(chain.all_in_unit_interval);
  EXPECT_TRUE(chain.strictly_decreasing);
  ASSERT_EQ(chain.roots.size(), 2u);
  for (const auto& e : chain.roots) {
    EXPECT_GE(e.lo, 0);
    EXPECT_LE(e.hi, 1);
  }
}

TEST(LambdaChain, EnclosuresInUnitIntervalAndFixedPoint) {
  const std::size_t k = 2;
  for (const Rational& t : {make_rational(1, 10), half}) {
    auto chain = lambda_chain(k, t);
    ASSERT_EQ(chain.roots.size(), k + 1);
    ASSERT_TRUE(chain.strictly_decreasing);
    for (std::size_t j = 1; j <= k; ++j) EXPECT_LE(chain.roots[j].hi, chain.roots[j - 1].lo);
    for (std::size_t j = 1; j <= k + 1; ++j) {
      const auto& e0 = chain.roots[j - 1];
      EXPECT_GE(e0.lo, 0);
      EXPECT_LE(e0.hi, 1);
      auto e = refine(e0, phi(k, t, j), default_refine_width());
      Rational m = e.midpoint();
      Rational lhs = m * phi_tilde(k, t, j)(m);
      EXPECT_LT(Rational(abs(lhs - pow(t, j))).get_d(), 1e-20);
    }
  }
}

TEST(LambdaChain, HalfMatchesIndependentProbe) {
  // minimal positive roots of det(A(k+j+1,k,1/2) - l I), computed separately
  auto chain = lambda_chain(1, half);
  ASSERT_TRUE(chain.strictly_decreasing);
  EXPECT_NEAR(refine(chain.roots[0], phi(1, half, 1), default_refine_width()).midpoint().get_d(),
              0.20630, 1e-4);
  EXPECT_NEAR(refine(chain.roots[1], phi(1, half, 2), default_refine_width()).midpoint().get_d(),
              0.10321, 1e-4);
}

TEST(ComplexRoots, UnitImaginary) {
  auto roots = complex_roots(Polynomial({1, 0, 1}));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_LT(static_cast<double>(abs(roots[0].re)), 1e-30);
  EXPECT_NEAR(static_cast<double>(roots[0].im), -1.0, 1e-30);
  EXPECT_NEAR(static_cast<double>(roots[1].im), 1.0, 1e-30);
  EXPECT_THROW(complex_roots(Polynomial({4})), std::invalid_argument);
}

TEST(ComplexRoots, ResidualsAndConjugation) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Rational> coeffs(2 + rep % 12);
    for (auto& x : coeffs) x = Rational(c(rng));
    coeffs.back() = 1 + std::abs(c(rng));
    Polynomial p(coeffs);
    auto roots = complex_roots_square_free(p);
    for (const auto& r : roots) {
      Complex z(r.re, r.im);
      Real scale = 0;
      for (std::size_t i = p.coeffs().size(); i-- > 0;) scale = scale * abs(z) + abs(to_real(p.coeffs()[i]));
      EXPECT_LE(r.residual, Real("1e-30") * scale);
      if (r.im != 0) {
        bool found = false;
        for (const auto& s : roots)
          if (s.re == r.re && s.im == -r.im) found = true;
        EXPECT_TRUE(found);
      }
    }
  }
}

TEST(ComplexRoots, RootZeroSplitOff) {
  auto roots = complex_roots(Polynomial({0, 0, -1, 1}));
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0].re, 0);
  EXPECT_EQ(roots[1].re, 0);
  EXPECT_NEAR(static_cast<double>(roots[2].re), 1.0, 1e-40);
  EXPECT_TRUE(roots[0].suspected_multiple);
}

TEST(ComplexRoots, IterationCapRaisesWithPartialResults) {
  AberthOptions opt;
  opt.max_iterations = 1;
  try {
    complex_roots(charpoly(build_A(12, 5, half)), opt);
    FAIL() << "expected RootFindError";
  } catch (const RootFindError& e) {
    EXPECT_EQ(e.partial().size(), 12u);
  }
}

TEST(ComplexRoots, RemarkEigenvalues) {
  auto ra = complex_roots(charpoly(build_A(44, 21, half)));
  ASSERT_EQ(ra.size(), 44u);
  EXPECT_NEAR(static_cast<double>(ra[0].re), -2.809929189497896e-2, 1e-13);
  EXPECT_NEAR(static_cast<double>(abs(ra[0].im)), 3.275076252367531e-1, 1e-13);
  EXPECT_EQ(ra[0].re, ra[1].re);
  EXPECT_EQ(ra[0].im, -ra[1].im);

  auto rb = complex_roots_square_free(charpoly(build_B(21)));
  ASSERT_GE(rb.size(), 2u);
  EXPECT_NEAR(static_cast<double>(rb[0].re), -3.420708309454068e-2, 1e-13);
  EXPECT_NEAR(static_cast<double>(abs(rb[0].im)), 3.400425852703498e-1, 1e-13);
}

TEST(ComplexRoots, ContinuityAsTGoesToZero) {
  const std::size_t k = 2;
  auto limit = complex_roots(charpoly(build_B(k)));
  double prev = 1e300;
  for (unsigned m = 4; m <= 28; m += 8) {
    Rational t(Integer(1), Integer(1) << m);
    auto roots = complex_roots(charpoly(build_A(2 * k + 2, k, t)));
    double worst = 0;
    for (const auto& r : roots) worst = std::max(worst, nearest_distance(r, limit));
    EXPECT_LT(worst, prev) << "m=" << m;
    prev = worst;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(ComplexRoots, TightClusterNeedsMoreDigits) {
  // (l - 1)^16 = 2^-200: sixteen roots on the circle |l - 1| = 2^-12.5
  Polynomial p = Polynomial({-1, 1}).pow(16) - Polynomial::constant(Rational(Integer(1), Integer(1) << 200));
  AberthOptions fixed;
  fixed.escalate = false;
  EXPECT_THROW(complex_roots(p, fixed), RootFindError);
  auto roots = complex_roots(p);
  ASSERT_EQ(roots.size(), 16u);
  const Real radius = pow(Real(2), Real("-12.5"));
  for (const auto& r : roots) EXPECT_LT(abs(hypot(r.re - 1, r.im) - radius), Real("1e-40"));
}

TEST(SquareFree, DecompositionRebuildsPolynomial) {
  const std::vector<std::vector<std::pair<Rational, unsigned>>> cases = {
      {{1, 1}},
      {{half, 3}, {-2, 1}},
      {{0, 2}, {1, 2}, {make_rational(-1, 3), 5}},
      {{1, 4}, {2, 1}, {3, 2}, {make_rational(7, 5), 3}}};
  for (const auto& roots : cases) {
    const Polynomial p = from_roots(roots) * Rational(-3);
    const auto parts = square_free_decomposition(p);
    Polynomial rebuilt{p.leading()};
    for (const auto& [f, m] : parts) {
      EXPECT_EQ(f.leading(), 1);
      EXPECT_EQ(square_free_part(f), f);
      rebuilt = rebuilt * f.pow(m);
    }
    EXPECT_EQ(rebuilt, p);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j) EXPECT_EQ(gcd(parts[i].first, parts[j].first).degree(), 0);
  }
  EXPECT_TRUE(square_free_decomposition(Polynomial{5}).empty());
}

TEST(ComplexRoots, MultiplicitiesOfLimitMatrix) {
  const Polynomial p = charpoly(build_B(21));
  unsigned at_one = 0;
  for (Polynomial q = p; q(Rational(1)) == 0; ++at_one) q = q.exact_div(Polynomial({-1, 1}));
  auto roots = complex_roots_with_multiplicity(p);
  unsigned total = 0;
  bool found_one = false;
  for (const auto& r : roots) {
    total += r.multiplicity;
    if (abs(r.re - 1) < Real("1e-40") && abs(r.im) < Real("1e-40")) {
      found_one = true;
      EXPECT_EQ(r.multiplicity, at_one);
    } else {
      EXPECT_EQ(r.multiplicity, 1u);
    }
  }
  EXPECT_TRUE(found_one);
  EXPECT_GT(at_one, 1u);
  EXPECT_EQ(total, static_cast<unsigned>(p.degree()));
  EXPECT_EQ(roots.size(), complex_roots_square_free(p).size());
}
