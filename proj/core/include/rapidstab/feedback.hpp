#pragma once

#include <Eigen/Dense>

#include "rapidstab/gramian.hpp"
#include "rapidstab/lti.hpp"
#include "rapidstab/quadrature.hpp"

namespace rapidstab {

/// u = F x with F = -B^T Lambda^{-1}; closed_loop = A + B F.
struct FeedbackLaw {
  Eigen::MatrixXd gain;         // F, m x n
  Eigen::MatrixXd closed_loop;  // A_U, n x n
  GramianVariant variant = GramianVariant::kStandard;
  double omega = 0.0;
  double knot = 0.0;
};

/// Builds the Gramian that `synthesize` would use: standard with knot T,
/// truncated with horizon T0, or infinite-horizon (T0 and T unused).
GramianBundle build_gramian(const LtiSystem& sys, double omega, double T0, double T,
                            GramianVariant variant, const QuadratureOptions& quad = {});

/// Feedback from an existing bundle. Lambda^{-1} is applied through a
/// Cholesky factorisation; throws std::runtime_error if Lambda is not SPD.
FeedbackLaw synthesize(const LtiSystem& sys, const GramianBundle& g);

FeedbackLaw synthesize(const LtiSystem& sys, double omega, double T0, double T,
                       GramianVariant variant, const QuadratureOptions& quad = {});

struct ConjugateGenerator {
  Eigen::MatrixXd generator;  // A_V = -A^T - Lambda^{-1} Lambda'
  double similarity_error = 0.0;  // ||Lambda^{-1} A_U Lambda - A_V||_F / ||A_V||_F
};

ConjugateGenerator conjugate_generator(const LtiSystem& sys, const GramianBundle& g);

/// max Re(lambda) over the spectrum of a square matrix.
double spectral_abscissa(const Eigen::MatrixXd& M);

/// (tr M)^2 - 4 det M for a 2x2 matrix; negative means a complex pair.
double eigen_discriminant_2x2(const Eigen::MatrixXd& M);

/// Constants of the plateau-length decay estimate
///   ||U_T(t)|| <= c' exp((-2 omega + gamma + alpha phi(T)) t).
struct DecayBound {
  double c = 1.0;
  double gamma = 0.0;
  double c1_half_omega = 0.0;  // c1 on [0, 1/(2 omega)]
  double c2_T0 = 0.0;          // c2 on [0, T0]
  double alpha = 0.0;          // 2 omega c^2 c1 / c2
  double phiT = 0.0;           // exp(gamma T - 2 omega (T - T0))
  double exponent = 0.0;       // -2 omega + gamma + alpha phi(T)
  double cPrime = 0.0;         // c ||Lambda_T|| ||Lambda_T^{-1}||
};

DecayBound decay_bound(const LtiSystem& sys, double omega, double T0, double T,
                       const QuadratureOptions& quad = {});

}  // namespace rapidstab
