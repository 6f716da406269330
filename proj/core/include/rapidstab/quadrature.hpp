#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rapidstab {

/// Controls the composite Gauss-Legendre rule used for every Gramian.
///
/// With `certify` set, weighted Gramians check the Riccati residual and
/// double the per-panel node count (up to `max_nodes`) until it drops below
/// `residual_tolerance`. An explicit node count from the command line or the
/// RAPIDSTAB_QUAD_NODES environment variable switches certification off so
/// that an under-resolved rule is reported rather than repaired.
struct QuadratureOptions {
  int nodes = 16;
  bool certify = true;
  int max_nodes = 64;
  double residual_tolerance = 1e-9;
  double max_panel_width = 1.0;

  static QuadratureOptions fixed(int nodes);
  /// Defaults, overridden by RAPIDSTAB_QUAD_NODES when it is set.
  static QuadratureOptions from_environment();
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point rule via Newton iteration on P_n. Throws for n < 1.
GaussLegendreRule gauss_legendre(int n);

struct QuadraturePoint {
  double s;
  double weight;
};

/// Splits [a, b] into equal panels no wider than max_width and appends the
/// mapped rule to `out`. Panels never extend past either endpoint.
void append_composite_points(double a, double b, double max_width,
                             const GaussLegendreRule& rule,
                             std::vector<QuadraturePoint>& out);

/// Panel width for integrands built from e^{-sA}: the requested cap, further
/// limited by 8 / ||A|| so every panel spans a bounded number of radians.
double gramian_panel_width(const Eigen::MatrixXd& A, double cap);

using ScalarWeight = std::function<double(double)>;

/// For each weight f_j returns sum_k w_k f_j(s_k) Phi(s_k) Phi(s_k)^T with
/// Phi(s) = e^{-sA} B. Results are symmetrised.
std::vector<Eigen::MatrixXd> integrate_gramians(const Eigen::MatrixXd& A,
                                                const Eigen::MatrixXd& B,
                                                std::span<const QuadraturePoint> points,
                                                std::span<const ScalarWeight> weights);

}  // namespace rapidstab
