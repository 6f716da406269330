#include "rapidstab/lti.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "rapidstab/demo_systems.hpp"
#include "rapidstab/errors.hpp"
#include "test_support.hpp"

namespace rapidstab {
namespace {

using std::numbers::pi;

Eigen::MatrixXd rotation_generator() {
  Eigen::MatrixXd A(2, 2);
  A << 0, 1,
      -1, 0;
  return A;
}

// Truncated Taylor series, independent of the Pade path.
Eigen::MatrixXd taylor_expm(const Eigen::MatrixXd& A, double t) {
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * (t * A) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

TEST(LtiSystem, RejectsInvalidShapes) {
  EXPECT_THROW(LtiSystem::make(Eigen::MatrixXd(2, 3), Eigen::MatrixXd::Ones(2, 1)),
               std::invalid_argument);
  EXPECT_THROW(LtiSystem::make(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Ones(3, 1)),
               std::invalid_argument);
  EXPECT_THROW(LtiSystem::make(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd(2, 0)),
               std::invalid_argument);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
  A(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(LtiSystem::make(A, Eigen::MatrixXd::Ones(2, 1)), std::invalid_argument);
}

TEST(Expm, ZeroTimeIsIdentity) {
  std::mt19937_64 gen(1);
  const Eigen::MatrixXd A = testing::random_matrix(gen, 4, 4);
  EXPECT_EQ(expm(A, 0.0), Eigen::MatrixXd::Identity(4, 4));
}

TEST(Expm, QuarterRotation) {
  const Eigen::MatrixXd E = expm(rotation_generator(), pi / 2);
  EXPECT_NEAR(E(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(E(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(E(1, 0), -1.0, 1e-15);
  EXPECT_NEAR(E(1, 1), 0.0, 1e-15);
}

TEST(Expm, NilpotentSeriesTerminates) {
  Eigen::MatrixXd A(2, 2);
  A << 0, 1,
       0, 0;
  for (const double t : {-3.0, 0.25, 7.5}) {
    Eigen::MatrixXd expected(2, 2);
    expected << 1, t,
                0, 1;
    EXPECT_TRUE(expm(A, t).isApprox(expected, 1e-14)) << "t = " << t;
  }
}

TEST(Expm, MatchesTaylorForSmallArguments) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd A = testing::random_matrix(gen, 5, 5);
    A /= A.norm();  // ||tA|| <= 1 for |t| <= 1
    const double t = testing::uniform(gen);
    const Eigen::MatrixXd ref = taylor_expm(A, t);
    EXPECT_LE((expm(A, t) - ref).norm() / ref.norm(), 1e-12);
  }
}

TEST(Expm, LargeRotationAccuracy) {
  // ||tA|| = 50: closed form [[cos t, sin t], [-sin t, cos t]].
  const double t = 50.0;
  const Eigen::MatrixXd E = expm(rotation_generator(), t);
  Eigen::MatrixXd ref(2, 2);
  ref << std::cos(t), std::sin(t),
        -std::sin(t), std::cos(t);
  EXPECT_LE((E - ref).norm() / ref.norm(), 1e-12);
}

TEST(Expm, GroupLaw) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd A = testing::random_matrix(gen, 4, 4);
    A *= 4.0 / A.norm();
    const double s = testing::uniform(gen, -2.5, 2.5);
    const double t = testing::uniform(gen, -2.5, 2.5);
    const Eigen::MatrixXd lhs = expm(A, s) * expm(A, t);
    const Eigen::MatrixXd rhs = expm(A, s + t);
    EXPECT_LE((lhs - rhs).norm(), 1e-10 * std::max(1.0, rhs.norm()));
    EXPECT_LE((expm(A, t) * expm(A, -t) - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-10);
  }
}

TEST(Expm, RejectsBadInput) {
  EXPECT_THROW(expm(Eigen::MatrixXd(2, 3), 1.0), std::invalid_argument);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
  A(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(expm(A, 1.0), std::invalid_argument);
}

TEST(Propagate, ScalarIdentityGroup) {
  const auto sys = LtiSystem::make(Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Ones(1, 1));
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(1, 2.0);
  for (const auto dir : {Direction::kForward, Direction::kBackwardAdjoint}) {
    EXPECT_DOUBLE_EQ(propagate(sys, x0, 3.7, dir)(0), 2.0);
  }
}

TEST(Propagate, HalfTurn) {
  const auto sys = demo_oscillator();
  const Eigen::Vector2d x = propagate(sys, Eigen::Vector2d(1, 0), pi, Direction::kForward);
  EXPECT_NEAR(x(0), -1.0, 1e-14);
  EXPECT_NEAR(x(1), 0.0, 1e-14);
}

TEST(Propagate, ForwardThenBackwardReturns) {
  std::mt19937_64 gen(4);
  const auto sys = testing::random_system(gen, 5, 2);
  const Eigen::VectorXd x0 = testing::random_matrix(gen, 5, 1);
  for (const auto dir : {Direction::kForward, Direction::kBackwardAdjoint}) {
    const Eigen::VectorXd back = propagate(sys, propagate(sys, x0, 1.3, dir), -1.3, dir);
    EXPECT_LE((back - x0).norm(), 1e-10);
  }
  // The adjoint direction really is e^{-tA^T}.
  const Eigen::VectorXd adj = propagate(sys, x0, 0.7, Direction::kBackwardAdjoint);
  EXPECT_LE((adj - taylor_expm(-sys.A().transpose(), 0.7) * x0).norm(), 1e-12);
  EXPECT_THROW(propagate(sys, Eigen::VectorXd::Ones(3), 1.0, Direction::kForward),
               std::invalid_argument);
}

TEST(ControllabilityRank, Examples) {
  EXPECT_EQ(controllability_rank(demo_oscillator()), 2);
  EXPECT_EQ(controllability_rank(LtiSystem::make(rotation_generator(), Eigen::MatrixXd::Zero(2, 1))),
            0);
  EXPECT_EQ(controllability_rank(
                LtiSystem::make(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1, 0))),
            1);
}

TEST(UnweightedGramian, ScalarIsHorizon) {
  for (const double T : {0.1, 1.0, 7.25}) {
    EXPECT_NEAR(unweighted_gramian(demo_scalar(), T)(0, 0), T, 1e-14 * T);
  }
}

TEST(UnweightedGramian, OscillatorHalfPeriod) {
  const Eigen::MatrixXd M = unweighted_gramian(demo_oscillator(), pi);
  EXPECT_NEAR(M(0, 0), pi / 2, 1e-13);
  EXPECT_NEAR(M(1, 1), pi / 2, 1e-13);
  EXPECT_NEAR(M(0, 1), 0.0, 1e-13);
  EXPECT_NEAR(M(1, 0), 0.0, 1e-13);
}

TEST(UnweightedGramian, VanishesWithHorizon) {
  std::mt19937_64 gen(5);
  const auto sys = testing::random_system(gen, 4, 1);
  const double n1 = unweighted_gramian(sys, 1e-3).norm();
  const double n2 = unweighted_gramian(sys, 1e-6).norm();
  EXPECT_LT(n2, 1e-5);
  EXPECT_NEAR(n1 / n2, 1e3, 10.0);
  EXPECT_THROW(unweighted_gramian(sys, 0.0), std::invalid_argument);
  EXPECT_THROW(unweighted_gramian(sys, -1.0), std::invalid_argument);
}

TEST(UnweightedGramian, SymmetricPsdAndMonotone) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 5;
    const auto sys = LtiSystem::make(testing::random_matrix(gen, n, n),
                                     testing::random_matrix(gen, n, 1 + trial % 2));
    const double T = testing::uniform(gen, 0.2, 3.0);
    const Eigen::MatrixXd M = unweighted_gramian(sys, T);
    EXPECT_LE((M - M.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
    const Eigen::MatrixXd later = unweighted_gramian(sys, T + testing::uniform(gen, 0.1, 2.0));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> diff(later - M);
    EXPECT_GE(diff.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(ObservabilityConstants, Examples) {
  const auto half = observability_constants(demo_oscillator(), pi);
  EXPECT_NEAR(half.c1, pi / 2, 1e-12);
  EXPECT_NEAR(half.c2, pi / 2, 1e-12);
  EXPECT_EQ(half.horizon, pi);

  // Eigenvalues of M(1) = [[s, -sin^2(1)/2], [-sin^2(1)/2, c]] with
  // s = (1 - sin(1)cos(1))/2, c = (1 + sin(1)cos(1))/2 (closed-form antiderivatives).
  const auto one = observability_constants(demo_oscillator(), 1.0);
  EXPECT_NEAR(one.c1, 0.9207354, 1e-6);
  EXPECT_NEAR(one.c2, 0.0792646, 1e-6);
  EXPECT_LE(one.c2, one.c1);

  const auto scalar = observability_constants(demo_scalar(), 2.5);
  EXPECT_NEAR(scalar.c1, 2.5, 1e-13);
  EXPECT_NEAR(scalar.c2, 2.5, 1e-13);
}

TEST(ObservabilityConstants, RankDeficientIsNotObservable) {
  const auto sys = LtiSystem::make(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1, 0));
  EXPECT_THROW(observability_constants(sys, 1.0), NotControllableError);
}

TEST(GrowthBound, Examples) {
  std::mt19937_64 gen(7);
  const auto skew = LtiSystem::make(testing::random_skew(gen, 5), Eigen::MatrixXd::Ones(5, 1));
  const auto gs = growth_bound(skew);
  EXPECT_EQ(gs.c, 1.0);
  EXPECT_EQ(gs.gamma, 0.0);

  const auto neg = growth_bound(LtiSystem::make(-Eigen::MatrixXd::Identity(2, 2),
                                                Eigen::MatrixXd::Ones(2, 1)));
  EXPECT_EQ(neg.c, 1.0);
  EXPECT_NEAR(neg.gamma, 1.0, 1e-15);

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
  D.diagonal() << 2.0, -3.0;
  EXPECT_NEAR(growth_bound(LtiSystem::make(D, Eigen::MatrixXd::Ones(2, 1))).gamma, 3.0, 1e-15);
}

TEST(GrowthBound, CertifiesAdjointGroupNorm) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sys = LtiSystem::make(testing::random_matrix(gen, 4, 4), Eigen::MatrixXd::Ones(4, 1));
    const auto gb = growth_bound(sys);
    for (int k = 0; k < 20; ++k) {
      const double t = 5.0 * k / 19.0;
      const Eigen::MatrixXd E = expm(-sys.A().transpose(), t);
      const double norm = Eigen::JacobiSVD<Eigen::MatrixXd>(E).singularValues()(0);
      EXPECT_LE(norm, gb.c * std::exp(gb.gamma * t) * (1 + 1e-9));
    }
  }
}

}  // namespace
}  // namespace rapidstab
