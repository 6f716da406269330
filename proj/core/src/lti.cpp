#include "rapidstab/lti.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "rapidstab/errors.hpp"

namespace rapidstab {

LtiSystem LtiSystem::make(Eigen::MatrixXd A, Eigen::MatrixXd B, std::string label) {
  if (A.rows() < 1 || A.rows() != A.cols()) {
    throw std::invalid_argument("A must be a non-empty square matrix");
  }
  if (B.cols() < 1) throw std::invalid_argument("B must have at least one column");
  if (B.rows() != A.rows()) {
    throw std::invalid_argument("B must have exactly n = " + std::to_string(A.rows()) + " rows");
  }
  if (!A.allFinite() || !B.allFinite()) {
    throw std::invalid_argument("system matrices contain non-finite entries");
  }
  return LtiSystem(std::move(A), std::move(B), std::move(label));
}

LtiSystem LtiSystem::with_scaled_input(double sigma) const {
  return make(A_, sigma * B_, label_);
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& A, double t) {
  if (A.rows() != A.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (!A.allFinite() || !std::isfinite(t)) {
    throw std::invalid_argument("expm: non-finite input");
  }
  if (t == 0.0) return Eigen::MatrixXd::Identity(A.rows(), A.cols());
  // Pade(13) scaling and squaring.
  return (t * A).exp();
}

Eigen::VectorXd propagate(const LtiSystem& sys, const Eigen::VectorXd& x0, double t,
                          Direction direction) {
  if (x0.size() != sys.n()) {
    throw std::invalid_argument("propagate: state has length " + std::to_string(x0.size()) +
                                ", expected " + std::to_string(sys.n()));
  }
  if (direction == Direction::kForward) return expm(sys.A(), t) * x0;
  return expm(sys.A().transpose(), -t) * x0;
}

int controllability_rank(const LtiSystem& sys) {
  // Orthogonal staircase: grow an orthonormal basis of span{B, AB, A^2 B, ...}
  // one block at a time instead of forming the ill-conditioned Kalman matrix.
  const Eigen::Index n = sys.n();
  const double scale = std::max(sys.A().norm(), sys.B().norm());
  if (scale == 0.0) return 0;
  const double tol = 1e-10 * scale;
  Eigen::MatrixXd Q(n, 0);
  Eigen::MatrixXd W = sys.B();
  while (Q.cols() < n) {
    for (int pass = 0; pass < 2; ++pass) W -= Q * (Q.transpose() * W);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index keep = 0;
    while (keep < sv.size() && sv(keep) > tol) ++keep;
    keep = std::min(keep, n - Q.cols());
    if (keep == 0) break;
    const Eigen::MatrixXd fresh = svd.matrixU().leftCols(keep);
    Q.conservativeResize(Eigen::NoChange, Q.cols() + keep);
    Q.rightCols(keep) = fresh;
    W = sys.A() * fresh;
  }
  return static_cast<int>(Q.cols());
}

Eigen::MatrixXd unweighted_gramian(const LtiSystem& sys, double T, const QuadratureOptions& quad) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("unweighted_gramian: horizon must be positive and finite");
  }
  const auto rule = gauss_legendre(quad.nodes);
  std::vector<QuadraturePoint> points;
  append_composite_points(0.0, T, gramian_panel_width(sys.A(), quad.max_panel_width), rule,
                          points);
  const ScalarWeight one = [](double) { return 1.0; };
  return integrate_gramians(sys.A(), sys.B(), points, std::span(&one, 1)).front();
}

ObservabilityConstants observability_constants(const LtiSystem& sys, double T,
                                               const QuadratureOptions& quad) {
  if (const int rank = controllability_rank(sys); rank < sys.n()) {
    throw NotControllableError(rank, sys.n());
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(unweighted_gramian(sys, T, quad),
                                                           Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return {ev(ev.size() - 1), ev(0), T};
}

GrowthBound growth_bound(const LtiSystem& sys) {
  const Eigen::MatrixXd sym = -0.5 * (sys.A() + sys.A().transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  return {1.0, eig.eigenvalues().maxCoeff()};
}

double norm_bound(const Eigen::MatrixXd& A) {
  const double one = A.cwiseAbs().colwise().sum().maxCoeff();
  const double inf = A.cwiseAbs().rowwise().sum().maxCoeff();
  return std::sqrt(one * inf);
}

}  // namespace rapidstab
