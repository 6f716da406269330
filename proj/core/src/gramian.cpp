#include "rapidstab/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "rapidstab/errors.hpp"
#include "rk4.hpp"

namespace rapidstab {
namespace {

void require_controllable(const LtiSystem& sys) {
  if (const int rank = controllability_rank(sys); rank < sys.n()) {
    throw NotControllableError(rank, sys.n());
  }
}

double spd_condition(const Eigen::MatrixXd& S) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(eig.eigenvalues().size() - 1);
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

GramianBundle standard_by_quadrature(const LtiSystem& sys, const WeightProfile& w, int nodes,
                                     double width_cap) {
  const auto rule = gauss_legendre(nodes);
  const double width = gramian_panel_width(sys.A(), std::min(width_cap, 0.5 / w.omega()));
  // Panels never straddle the knot.
  std::vector<QuadraturePoint> points;
  append_composite_points(0.0, w.knot(), width, rule, points);
  append_composite_points(w.knot(), w.end(), width, rule, points);

  const ScalarWeight weights[] = {
      [&w](double s) { return w.value(s); },
      [&w](double s) { return -w.derivative(s); },
  };
  auto sums = integrate_gramians(sys.A(), sys.B(), points, weights);

  GramianBundle g;
  g.lambda = std::move(sums[0]);
  g.lambda_prime = std::move(sums[1]);
  g.condition_number = spd_condition(g.lambda);
  g.quad_nodes = nodes;
  g.variant = GramianVariant::kStandard;
  g.omega = w.omega();
  g.knot = w.knot();
  return g;
}

const Eigen::MatrixXd& require_prime(const GramianBundle& g, const char* op) {
  if (!g.lambda_prime) {
    throw std::invalid_argument(std::string(op) + ": variant '" +
                                std::string(to_string(g.variant)) +
                                "' carries no derivative Gramian");
  }
  return *g.lambda_prime;
}

}  // namespace

std::string_view to_string(GramianVariant variant) {
  switch (variant) {
    case GramianVariant::kStandard: return "standard";
    case GramianVariant::kTruncated: return "truncated";
    case GramianVariant::kInfiniteHorizon: return "infinite";
  }
  return "unknown";
}

GramianVariant parse_variant(std::string_view name) {
  if (name == "standard") return GramianVariant::kStandard;
  if (name == "truncated") return GramianVariant::kTruncated;
  if (name == "infinite") return GramianVariant::kInfiniteHorizon;
  throw std::invalid_argument("unknown Gramian variant '" + std::string(name) +
                              "' (expected standard|truncated|infinite)");
}

GramianBundle weighted_gramian(const LtiSystem& sys, const WeightProfile& weight,
                               const QuadratureOptions& quad) {
  require_controllable(sys);
  int nodes = quad.nodes;
  for (;;) {
    GramianBundle g = standard_by_quadrature(sys, weight, nodes, quad.max_panel_width);
    if (!quad.certify) return g;
    const double residual = riccati_residual(sys, g);
    if (residual <= quad.residual_tolerance) return g;
    if (nodes >= quad.max_nodes) {
      throw QuadratureError("weighted Gramian did not certify: Riccati residual " +
                            std::to_string(residual) + " at " + std::to_string(nodes) +
                            " nodes per panel");
    }
    nodes = std::min(2 * nodes, quad.max_nodes);
  }
}

GramianBundle truncated_gramian(const LtiSystem& sys, double omega, double T0,
                                const QuadratureOptions& quad) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("truncated_gramian: omega must be positive");
  }
  if (!(T0 > 0.0) || !std::isfinite(T0)) {
    throw std::invalid_argument("truncated_gramian: T0 must be positive");
  }
  require_controllable(sys);
  const auto rule = gauss_legendre(quad.nodes);
  std::vector<QuadraturePoint> points;
  append_composite_points(0.0, T0,
                          gramian_panel_width(sys.A(), std::min(quad.max_panel_width, 0.5 / omega)),
                          rule, points);
  const ScalarWeight decay = [omega](double s) { return std::exp(-2.0 * omega * s); };

  GramianBundle g;
  g.lambda = integrate_gramians(sys.A(), sys.B(), points, std::span(&decay, 1)).front();
  g.condition_number = spd_condition(g.lambda);
  g.quad_nodes = quad.nodes;
  g.variant = GramianVariant::kTruncated;
  g.omega = omega;
  g.knot = T0;
  return g;
}

GramianBundle infinite_horizon_gramian(const LtiSystem& sys, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("infinite_horizon_gramian: omega must be positive");
  }
  const Eigen::EigenSolver<Eigen::MatrixXd> es(sys.A(), false);
  const double min_real = es.eigenvalues().real().minCoeff();
  if (!(min_real > -omega)) {
    throw IntegrabilityError("infinite_horizon_gramian: eigenvalue with real part " +
                             std::to_string(min_real) + " <= -omega = " +
                             std::to_string(-omega));
  }
  require_controllable(sys);

  const int n = sys.n();
  const Eigen::MatrixXd M = sys.A() + omega * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd C = sys.B() * sys.B().transpose();

  // Unknowns are the upper triangle of the symmetric solution.
  auto index = [n](int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
  };
  const int unknowns = n * (n + 1) / 2;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(unknowns, unknowns);
  Eigen::VectorXd rhs(unknowns);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const int row = index(i, j);
      rhs(row) = C(i, j);
      for (int k = 0; k < n; ++k) {
        K(row, index(k, j)) += M(i, k);
        K(row, index(i, k)) += M(j, k);
      }
    }
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  if (!lu.isInvertible()) {
    throw std::runtime_error("infinite_horizon_gramian: singular Lyapunov system");
  }
  const Eigen::VectorXd x = lu.solve(rhs);

  Eigen::MatrixXd X(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) X(i, j) = x(index(i, j));
  }
  GramianBundle g;
  g.lambda = X;
  g.lambda_prime = 2.0 * omega * X;
  g.condition_number = spd_condition(X);
  g.quad_nodes = 0;
  g.variant = GramianVariant::kInfiniteHorizon;
  g.omega = omega;
  g.knot = std::numeric_limits<double>::infinity();
  return g;
}

Eigen::VectorXd apply_gramian_via_odes(const LtiSystem& sys, const WeightProfile& weight,
                                       const Eigen::VectorXd& xi0) {
  const int n = sys.n();
  if (xi0.size() != n) {
    throw std::invalid_argument("apply_gramian_via_odes: xi0 has length " +
                                std::to_string(xi0.size()) + ", expected " + std::to_string(n));
  }
  const double end = weight.end();
  const double dt_max = std::min(1e-3, end / 2000.0);
  if (!(dt_max > 64.0 * std::numeric_limits<double>::epsilon() * end)) {
    throw std::runtime_error("apply_gramian_via_odes: step size underflow");
  }
  // Step grid aligned with [0, knot] and [knot, end].
  struct Segment {
    double a, b;
    long steps;
  };
  const Segment segments[] = {
      {0.0, weight.knot(), static_cast<long>(std::ceil(weight.knot() / dt_max))},
      {weight.knot(), end, static_cast<long>(std::ceil((end - weight.knot()) / dt_max))},
  };

  const Eigen::MatrixXd At = sys.A().transpose();
  const auto adjoint = [&At](double, const Eigen::VectorXd& xi) -> Eigen::VectorXd {
    return -(At * xi);
  };
  Eigen::VectorXd xi = xi0;
  for (const auto& seg : segments) {
    const double h = (seg.b - seg.a) / static_cast<double>(seg.steps);
    for (long k = 0; k < seg.steps; ++k) {
      xi = detail::rk4_step(adjoint, seg.a + h * static_cast<double>(k), xi, h);
    }
  }

  // Joint backward sweep of (xi, y) from (xi(end), 0).
  const Eigen::MatrixXd& A = sys.A();
  const Eigen::MatrixXd& B = sys.B();
  const auto joint = [&](double t, const Eigen::VectorXd& z) -> Eigen::VectorXd {
    const double s = std::clamp(t, 0.0, end);
    Eigen::VectorXd dz(2 * n);
    const auto xi_t = z.head(n);
    const auto y_t = z.tail(n);
    dz.head(n) = -(At * xi_t);
    dz.tail(n) = A * y_t + B * (weight.value(s) * (B.transpose() * xi_t));
    return dz;
  };
  Eigen::VectorXd z(2 * n);
  z.head(n) = xi;
  z.tail(n).setZero();
  for (auto seg = std::rbegin(segments); seg != std::rend(segments); ++seg) {
    const double h = (seg->b - seg->a) / static_cast<double>(seg->steps);
    for (long k = seg->steps; k > 0; --k) {
      z = detail::rk4_step(joint, seg->a + h * static_cast<double>(k), z, -h);
    }
  }
  return -z.tail(n);
}

double riccati_residual(const LtiSystem& sys, const GramianBundle& g) {
  const Eigen::MatrixXd& prime = require_prime(g, "riccati_residual");
  if (g.lambda.rows() != sys.n()) {
    throw std::invalid_argument("riccati_residual: bundle dimension does not match system");
  }
  const Eigen::MatrixXd BBt = sys.B() * sys.B().transpose();
  const Eigen::MatrixXd res =
      sys.A() * g.lambda + g.lambda * sys.A().transpose() + prime - BBt;
  return res.norm() / BBt.norm();
}

Eigen::MatrixXd damping_root(const GramianBundle& g) {
  const Eigen::MatrixXd& prime = require_prime(g, "damping_root");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> prime_eig(prime, Eigen::EigenvaluesOnly);
  if (prime_eig.eigenvalues()(0) < -1e-10) {
    throw std::runtime_error("damping_root: derivative Gramian is indefinite (min eigenvalue " +
                             std::to_string(prime_eig.eigenvalues()(0)) + ")");
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(g.lambda);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("damping_root: Lambda is not positive definite");
  }
  const Eigen::MatrixXd left = llt.solve(prime);  // Lambda^{-1} Lambda'
  Eigen::MatrixXd L = llt.solve(left.transpose());
  L = 0.5 * (L + L.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L);
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

CoercivityMargin coercivity_margin(const GramianBundle& g, double omega) {
  const Eigen::MatrixXd& prime = require_prime(g, "coercivity_margin");
  CoercivityMargin out;
  out.R = prime - 2.0 * omega * g.lambda;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.R, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues()(0);
  return out;
}

}  // namespace rapidstab
