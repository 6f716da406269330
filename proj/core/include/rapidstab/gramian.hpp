#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "rapidstab/lti.hpp"
#include "rapidstab/quadrature.hpp"
#include "rapidstab/weight.hpp"

namespace rapidstab {

enum class GramianVariant { kStandard, kTruncated, kInfiniteHorizon };

std::string_view to_string(GramianVariant variant);
/// Accepts "standard", "truncated", "infinite". Throws std::invalid_argument.
GramianVariant parse_variant(std::string_view name);

/// Weighted Gramian plus the data needed to certify it.
///
/// `lambda_prime` is the Gramian taken with weight -e'(s). It is present for
/// the standard variant (second quadrature) and the infinite-horizon variant
/// (where it equals 2 omega Lambda); the truncated variant carries none.
struct GramianBundle {
  Eigen::MatrixXd lambda;
  std::optional<Eigen::MatrixXd> lambda_prime;
  double condition_number = 0.0;
  int quad_nodes = 0;  // Gauss-Legendre nodes per panel; 0 for closed-form solves
  GramianVariant variant = GramianVariant::kStandard;
  double omega = 0.0;
  double knot = 0.0;  // knot of the weight (standard) or horizon (truncated)
};

/// Lambda = \int_0^{end} e(s) e^{-sA} B B^T e^{-sA^T} ds and its -e' companion.
/// Throws NotControllableError, or QuadratureError if certification fails at
/// the maximum node count.
GramianBundle weighted_gramian(const LtiSystem& sys, const WeightProfile& weight,
                               const QuadratureOptions& quad = {});

/// \int_0^{T0} e^{-2 omega t} e^{-tA} B B^T e^{-tA^T} dt, no ramp segment.
GramianBundle truncated_gramian(const LtiSystem& sys, double omega, double T0,
                                const QuadratureOptions& quad = {});

/// Solves (A + omega I) X + X (A + omega I)^T = B B^T. Throws
/// IntegrabilityError if some eigenvalue of A has real part <= -omega.
GramianBundle infinite_horizon_gramian(const LtiSystem& sys, double omega);

/// Lambda xi0 computed without quadrature: integrate xi' = -A^T xi forward,
/// drive y' = A y + B e(t) B^T xi backward from y(end) = 0 and return -y(0).
/// Uses classical RK4 with dt = min(1e-3, end / 2000), aligned to the knot.
Eigen::VectorXd apply_gramian_via_odes(const LtiSystem& sys, const WeightProfile& weight,
                                       const Eigen::VectorXd& xi0);

/// ||A L + L A^T + L' - B B^T||_F / ||B B^T||_F. Throws std::invalid_argument
/// for a bundle without lambda_prime.
double riccati_residual(const LtiSystem& sys, const GramianBundle& g);

/// Symmetric PSD square root of Lambda^{-1} Lambda' Lambda^{-1}.
Eigen::MatrixXd damping_root(const GramianBundle& g);

struct CoercivityMargin {
  Eigen::MatrixXd R;  // Lambda' - 2 omega Lambda
  double min_eigenvalue = 0.0;
};

CoercivityMargin coercivity_margin(const GramianBundle& g, double omega);

}  // namespace rapidstab
