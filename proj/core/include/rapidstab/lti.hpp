#pragma once

#include <string>

#include <Eigen/Dense>

#include "rapidstab/quadrature.hpp"

namespace rapidstab {

/// Continuous-time pair x' = A x + B u.
///
/// States are assumed to be expressed in coordinates where the Euclidean
/// inner product is the energy pairing, so adjoints are plain transposes.
class LtiSystem {
 public:
  /// Validates shapes and finiteness; throws std::invalid_argument.
  static LtiSystem make(Eigen::MatrixXd A, Eigen::MatrixXd B, std::string label = {});

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::MatrixXd& B() const { return B_; }
  int n() const { return static_cast<int>(A_.rows()); }
  int m() const { return static_cast<int>(B_.cols()); }
  const std::string& label() const { return label_; }

  /// Same system with B scaled by sigma.
  LtiSystem with_scaled_input(double sigma) const;

 private:
  LtiSystem(Eigen::MatrixXd A, Eigen::MatrixXd B, std::string label)
      : A_(std::move(A)), B_(std::move(B)), label_(std::move(label)) {}

  Eigen::MatrixXd A_;
  Eigen::MatrixXd B_;
  std::string label_;
};

/// ||e^{-tA^T}|| <= c e^{gamma t} for t >= 0.
struct GrowthBound {
  double c = 1.0;
  double gamma = 0.0;
};

/// Extreme eigenvalues of the unweighted Gramian on [0, horizon].
struct ObservabilityConstants {
  double c1 = 0.0;  // direct inequality
  double c2 = 0.0;  // observability inequality
  double horizon = 0.0;
};

enum class Direction { kForward, kBackwardAdjoint };

/// e^{tA}. Throws std::invalid_argument on non-square or non-finite input.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A, double t);

/// kForward: e^{tA} x0.  kBackwardAdjoint: e^{-tA^T} x0.
Eigen::VectorXd propagate(const LtiSystem& sys, const Eigen::VectorXd& x0, double t,
                          Direction direction);

/// Dimension of span{B, AB, ..., A^{n-1}B}, computed by an orthogonal
/// staircase; new directions count when their singular value exceeds
/// 1e-10 * max(||A||_F, ||B||_F).
int controllability_rank(const LtiSystem& sys);

/// M(T) = \int_0^T e^{-tA} B B^T e^{-tA^T} dt by composite Gauss-Legendre.
Eigen::MatrixXd unweighted_gramian(const LtiSystem& sys, double T,
                                   const QuadratureOptions& quad = {});

/// (c1, c2) = (lambda_max, lambda_min) of M(T). Throws NotControllableError
/// when the Kalman rank is deficient.
ObservabilityConstants observability_constants(const LtiSystem& sys, double T,
                                               const QuadratureOptions& quad = {});

/// Logarithmic-norm bound: c = 1, gamma = lambda_max((-A - A^T) / 2).
GrowthBound growth_bound(const LtiSystem& sys);

/// Cheap upper bound on ||A||_2, sqrt(||A||_1 ||A||_inf).
double norm_bound(const Eigen::MatrixXd& A);

}  // namespace rapidstab
