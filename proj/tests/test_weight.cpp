#include "rapidstab/weight.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rapidstab/quadrature.hpp"

namespace rapidstab {
namespace {

TEST(WeightProfile, RejectsInvalidParameters) {
  EXPECT_THROW(WeightProfile(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(WeightProfile(-1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(WeightProfile(0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(WeightProfile(0.5, INFINITY), std::invalid_argument);
}

TEST(WeightProfile, EndPoint) {
  const WeightProfile w(0.5, 1.0);
  EXPECT_DOUBLE_EQ(w.end(), 2.0);
  EXPECT_DOUBLE_EQ(WeightProfile(2.0, 3.0).end(), 3.25);
}

TEST(WeightEval, Examples) {
  const WeightProfile w(0.5, 1.0);
  EXPECT_DOUBLE_EQ(w.value(0.0), 1.0);
  EXPECT_NEAR(w.value(1.0), 0.3678794, 1e-7);
  // Both pieces agree at the knot: 2 omega (end - knot) = 1.
  const double ramp_at_knot = 2.0 * 0.5 * std::exp(-1.0) * (w.end() - 1.0);
  EXPECT_NEAR(ramp_at_knot, w.value(1.0), 1e-16);
  EXPECT_NEAR(w.value(std::nextafter(1.0, 2.0)), w.value(1.0), 1e-15);
  EXPECT_EQ(w.value(2.0), 0.0);
}

TEST(WeightEval, OutsideDomainThrows) {
  const WeightProfile w(0.5, 1.0);
  EXPECT_THROW(w.value(-1e-9), std::domain_error);
  EXPECT_THROW(w.value(2.0 + 1e-9), std::domain_error);
  EXPECT_THROW(w.derivative(3.0), std::domain_error);
}

TEST(WeightDerivative, Examples) {
  const WeightProfile w(0.5, 1.0);
  EXPECT_DOUBLE_EQ(w.derivative(0.0), -1.0);
  EXPECT_NEAR(w.derivative(1.5), -0.3678794, 1e-7);
  EXPECT_NEAR(w.derivative(0.5), -0.6065307, 1e-7);
}

TEST(WeightDerivative, ContinuousAtKnot) {
  for (const double omega : {0.1, 0.5, 3.0}) {
    const WeightProfile w(omega, 1.7);
    const double left = w.derivative(1.7);
    const double right = w.derivative(std::nextafter(1.7, 10.0));
    EXPECT_NEAR(left, right, 1e-14) << "omega = " << omega;
  }
}

TEST(WeightProfile, KeyInequalityAndMonotonicity) {
  for (const double omega : {0.05, 0.5, 1.0, 4.0}) {
    for (const double knot : {0.3, 1.0, 5.0}) {
      const WeightProfile w(omega, knot);
      double prev = w.value(0.0);
      for (int i = 0; i <= 400; ++i) {
        const double s = w.end() * i / 400.0;
        const double e = w.value(s);
        EXPECT_GE(-w.derivative(s), 2.0 * omega * e - 1e-12);
        EXPECT_GE(e, 0.0);
        EXPECT_LE(e, prev + 1e-15);
        prev = e;
      }
    }
  }
}

TEST(WeightProfile, IntegralMatchesClosedForm) {
  const auto rule = gauss_legendre(16);
  for (const double omega : {0.3, 0.5, 1.0}) {
    for (const double knot : {1.0, 2.5}) {
      const WeightProfile w(omega, knot);
      std::vector<QuadraturePoint> pts;
      append_composite_points(0.0, knot, 0.5, rule, pts);
      append_composite_points(knot, w.end(), 0.5, rule, pts);
      double sum = 0.0;
      for (const auto& p : pts) sum += p.weight * w.value(p.s);
      const double closed = (2.0 - std::exp(-2.0 * omega * knot)) / (4.0 * omega);
      EXPECT_NEAR(sum, closed, 1e-10);
    }
  }
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (const int n : {1, 2, 5, 16, 33}) {
    const auto rule = gauss_legendre(n);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(n));
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k) sum += rule.weights[k] * std::pow(rule.nodes[k], d);
      const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
      EXPECT_NEAR(sum, exact, 1e-14) << "n = " << n << ", degree " << d;
    }
  }
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(CompositePoints, CoverIntervalWithoutCrossingEnds) {
  const auto rule = gauss_legendre(4);
  std::vector<QuadraturePoint> pts;
  append_composite_points(1.0, 3.5, 1.0, rule, pts);
  ASSERT_EQ(pts.size(), 12u);  // three panels
  double total = 0.0;
  for (const auto& p : pts) {
    EXPECT_GT(p.s, 1.0);
    EXPECT_LT(p.s, 3.5);
    total += p.weight;
  }
  EXPECT_NEAR(total, 2.5, 1e-14);
}

}  // namespace
}  // namespace rapidstab
