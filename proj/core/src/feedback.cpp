#include "rapidstab/feedback.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "rapidstab/errors.hpp"
#include "rapidstab/weight.hpp"

namespace rapidstab {
namespace {

Eigen::LLT<Eigen::MatrixXd> factor(const Eigen::MatrixXd& lambda, const char* op) {
  Eigen::LLT<Eigen::MatrixXd> llt(lambda);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(std::string(op) + ": Lambda is not positive definite");
  }
  return llt;
}

void check_horizons(double omega, double T0, double T) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be positive");
  if (!(T0 > 0.0) || !std::isfinite(T0)) throw std::invalid_argument("T0 must be positive");
  if (!(T >= T0) || !std::isfinite(T)) throw std::invalid_argument("T must satisfy T >= T0");
}

}  // namespace

GramianBundle build_gramian(const LtiSystem& sys, double omega, double T0, double T,
                            GramianVariant variant, const QuadratureOptions& quad) {
  switch (variant) {
    case GramianVariant::kStandard:
      check_horizons(omega, T0, T);
      return weighted_gramian(sys, WeightProfile(omega, T), quad);
    case GramianVariant::kTruncated:
      check_horizons(omega, T0, T);
      return truncated_gramian(sys, omega, T0, quad);
    case GramianVariant::kInfiniteHorizon:
      return infinite_horizon_gramian(sys, omega);
  }
  throw std::invalid_argument("unknown Gramian variant");
}

FeedbackLaw synthesize(const LtiSystem& sys, const GramianBundle& g) {
  if (g.lambda.rows() != sys.n() || g.lambda.cols() != sys.n()) {
    throw std::invalid_argument("synthesize: bundle dimension does not match system");
  }
  const auto llt = factor(g.lambda, "synthesize");
  FeedbackLaw law;
  law.gain = -llt.solve(sys.B()).transpose();
  law.closed_loop = sys.A() + sys.B() * law.gain;
  law.variant = g.variant;
  law.omega = g.omega;
  law.knot = g.knot;
  return law;
}

FeedbackLaw synthesize(const LtiSystem& sys, double omega, double T0, double T,
                       GramianVariant variant, const QuadratureOptions& quad) {
  return synthesize(sys, build_gramian(sys, omega, T0, T, variant, quad));
}

ConjugateGenerator conjugate_generator(const LtiSystem& sys, const GramianBundle& g) {
  if (const int rank = controllability_rank(sys); rank < sys.n()) {
    throw NotControllableError(rank, sys.n());
  }
  if (!g.lambda_prime) {
    throw std::invalid_argument("conjugate_generator: bundle carries no derivative Gramian");
  }
  const auto llt = factor(g.lambda, "conjugate_generator");
  ConjugateGenerator out;
  out.generator = -sys.A().transpose() - llt.solve(*g.lambda_prime);
  const FeedbackLaw law = synthesize(sys, g);
  const Eigen::MatrixXd conjugated = llt.solve(law.closed_loop * g.lambda);
  out.similarity_error = (conjugated - out.generator).norm() / out.generator.norm();
  return out;
}

double spectral_abscissa(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw std::invalid_argument("spectral_abscissa: matrix must be square and non-empty");
  }
  if (!M.allFinite()) throw std::invalid_argument("spectral_abscissa: non-finite entries");
  const Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("spectral_abscissa: eigenvalue iteration did not converge");
  }
  return es.eigenvalues().real().maxCoeff();
}

double eigen_discriminant_2x2(const Eigen::MatrixXd& M) {
  if (M.rows() != 2 || M.cols() != 2) {
    throw std::invalid_argument("eigen_discriminant_2x2: expected a 2x2 matrix");
  }
  const double tr = M.trace();
  return tr * tr - 4.0 * M.determinant();
}

DecayBound decay_bound(const LtiSystem& sys, double omega, double T0, double T,
                       const QuadratureOptions& quad) {
  check_horizons(omega, T0, T);
  const GrowthBound growth = growth_bound(sys);
  DecayBound b;
  b.c = growth.c;
  b.gamma = growth.gamma;
  b.c1_half_omega = observability_constants(sys, 0.5 / omega, quad).c1;
  b.c2_T0 = observability_constants(sys, T0, quad).c2;
  b.alpha = 2.0 * omega * b.c * b.c * b.c1_half_omega / b.c2_T0;
  b.phiT = std::exp(b.gamma * T - 2.0 * omega * (T - T0));
  b.exponent = -2.0 * omega + b.gamma + b.alpha * b.phiT;

  const GramianBundle g = weighted_gramian(sys, WeightProfile(omega, T), quad);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.lambda, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  b.cPrime = b.c * ev(ev.size() - 1) / ev(0);
  return b;
}

}  // namespace rapidstab
