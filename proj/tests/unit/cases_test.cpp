#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ebpoisson/cases.hpp"
#include "ebpoisson/errors.hpp"

using namespace ebp;

namespace {

Point random_point(const TestCase& tc, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    Point p;
    p.dim = tc.dimension;
    for (int a = 0; a < tc.dimension; ++a) p[a] = tc.domain_lo + (tc.domain_hi - tc.domain_lo) * u(rng);
    if (tc.geometry.inside(p)) return p;
  }
}

// Fourth-order central first derivative of f along `axis`.
template <class F>
double d1(const F& f, Point p, int axis, double h) {
  const auto at = [&](double s) {
    Point q = p;
    q[axis] += s;
    return f(q);
  };
  return (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
}

double fd_laplacian(const TestCase& tc, const Point& p, double h) {
  double sum = 0.0;
  for (int a = 0; a < tc.dimension; ++a) {
    const auto at = [&](double s) {
      Point q = p;
      q[a] += s;
      return tc.exact_phi(q);
    };
    sum += (-at(-2 * h) + 16 * at(-h) - 30 * at(0) + 16 * at(h) - at(2 * h)) / (12 * h * h);
  }
  return sum;
}

class EveryCase : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST(Cases, Case1dExamples) {
  const TestCase tc = case_1d();
  EXPECT_EQ(tc.exact_phi(Point(0.0)), 0.0);
  EXPECT_NEAR(tc.exact_b(Point(0.25)), 8.0 - std::numbers::pi * std::numbers::pi, 1e-12);
  EXPECT_EQ(tc.domain_lo, -0.5);
  EXPECT_EQ(tc.domain_hi, 0.5);
}

TEST(Cases, Case1dInterfacesConfigurable) {
  const TestCase tc = case_1d(-0.313, 0.313);
  EXPECT_TRUE(tc.geometry.inside(Point(0.3125)));
  EXPECT_FALSE(tc.geometry.inside(Point(0.3135)));
}

TEST(Cases, Case2dExamples) {
  const TestCase tc = case_2d();
  EXPECT_DOUBLE_EQ(tc.exact_phi(Point(0.0, 0.0)), 0.125);
  EXPECT_DOUBLE_EQ(tc.exact_b(Point(0.0, 0.0)), 0.0625);
  const double x = 0.3, y = -0.2;
  const double q = 8 + 4 * x + x * x - 4 * y + y * y;
  EXPECT_NEAR(tc.exact_b(Point(x, y)), 4.0 / (q * q), 1e-15);
}

TEST(Cases, Case2dUniformExamples) {
  const TestCase tc = case_2d_uniform();
  EXPECT_EQ(tc.exact_b(Point(0.3, -0.7)), 4.0);
  EXPECT_EQ(tc.exact_phi(Point(1.0, 1.0)), 2.0);
}

TEST(Cases, Case3dExamples) {
  const TestCase tc = case_3d();
  EXPECT_DOUBLE_EQ(tc.exact_b(Point(0.0, 0.0, 0.0)), -6.0);
  EXPECT_NEAR(tc.exact_phi(Point(0.5, 0.5, 0.5)), std::exp(-0.75), 1e-15);
  EXPECT_EQ(tc.geometry.inside_convention(), InsideConvention::NegativeInside);
}

TEST(Cases, LookupByName) {
  for (const auto& name : case_names()) EXPECT_EQ(case_by_name(name).name, name);
  EXPECT_THROW(case_by_name("case4d"), UsageError);
}

TEST_P(EveryCase, RhsMatchesFiniteDifferenceLaplacian) {
  const TestCase tc = case_by_name(GetParam());
  std::mt19937_64 rng(20240611);
  for (int k = 0; k < 100; ++k) {
    const Point p = random_point(tc, rng);
    EXPECT_NEAR(tc.exact_b(p), fd_laplacian(tc, p, 1e-3), 1e-8) << "sample " << k;
  }
}

TEST_P(EveryCase, AnalyticDerivativesMatchFiniteDifferences) {
  const TestCase tc = case_by_name(GetParam());
  if (!tc.derivative) GTEST_SKIP() << "no analytic derivatives";
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const Point p = random_point(tc, rng);
    for (int a = 0; a < tc.dimension; ++a) {
      double prev_fd = d1(tc.exact_phi, p, a, 1e-3);
      for (int order = 1; order <= 4; ++order) {
        const double analytic = tc.derivative(p, a, order);
        if (order > 1) {
          prev_fd = d1([&](const Point& q) { return tc.derivative(q, a, order - 1); }, p, a, 1e-3);
        }
        EXPECT_NEAR(analytic, prev_fd, 1e-7 * std::max(1.0, std::abs(analytic)))
            << "order " << order << " axis " << a;
      }
    }
  }
}

TEST_P(EveryCase, LaplacianEqualsSumOfSecondDerivatives) {
  const TestCase tc = case_by_name(GetParam());
  if (!tc.derivative) GTEST_SKIP() << "no analytic derivatives";
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const Point p = random_point(tc, rng);
    double sum = 0.0;
    for (int a = 0; a < tc.dimension; ++a) sum += tc.derivative(p, a, 2);
    EXPECT_NEAR(sum, tc.exact_b(p), 1e-12 * std::max(1.0, std::abs(sum)));
  }
}

INSTANTIATE_TEST_SUITE_P(AllCases, EveryCase,
                         ::testing::Values("case1d", "case2d", "case2d-uniform", "case3d"),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (char& c : n) if (c == '-') c = '_';
                           return n;
                         });
