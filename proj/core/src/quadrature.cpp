#include "rapidstab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "rapidstab/lti.hpp"

namespace rapidstab {

QuadratureOptions QuadratureOptions::fixed(int nodes) {
  if (nodes < 1) throw std::invalid_argument("quadrature node count must be >= 1");
  QuadratureOptions q;
  q.nodes = nodes;
  q.certify = false;
  return q;
}

QuadratureOptions QuadratureOptions::from_environment() {
  const char* env = std::getenv("RAPIDSTAB_QUAD_NODES");
  if (env == nullptr || *env == '\0') return {};
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1 || value > 1024) {
    throw std::invalid_argument(std::string("RAPIDSTAB_QUAD_NODES must be an integer in [1, 1024], got '") +
                                env + "'");
  }
  return fixed(static_cast<int>(value));
}

namespace {

// Returns (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

void append_composite_points(double a, double b, double max_width,
                             const GaussLegendreRule& rule,
                             std::vector<QuadraturePoint>& out) {
  if (!(b > a)) return;
  if (!(max_width > 0.0)) throw std::invalid_argument("panel width must be positive");
  const auto panels = static_cast<long>(std::ceil((b - a) / max_width - 1e-12));
  const long count = std::max(1L, panels);
  const double width = (b - a) / static_cast<double>(count);
  for (long p = 0; p < count; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double hi = p + 1 == count ? b : lo + width;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      out.push_back({mid + half * rule.nodes[k], half * rule.weights[k]});
    }
  }
}

double gramian_panel_width(const Eigen::MatrixXd& A, double cap) {
  const double a = norm_bound(A);
  return a > 0.0 ? std::min(cap, 8.0 / a) : cap;
}

std::vector<Eigen::MatrixXd> integrate_gramians(const Eigen::MatrixXd& A,
                                                const Eigen::MatrixXd& B,
                                                std::span<const QuadraturePoint> points,
                                                std::span<const ScalarWeight> weights) {
  const Eigen::Index n = A.rows();
  std::vector<Eigen::MatrixXd> sums(weights.size(), Eigen::MatrixXd::Zero(n, n));
  Eigen::MatrixXd outer(n, n);
  for (const auto& pt : points) {
    const Eigen::MatrixXd phi = expm(A, -pt.s) * B;
    outer.noalias() = phi * phi.transpose();
    for (std::size_t j = 0; j < weights.size(); ++j) {
      sums[j] += (pt.weight * weights[j](pt.s)) * outer;
    }
  }
  for (auto& s : sums) s = 0.5 * (s + s.transpose()).eval();
  return sums;
}

}  // namespace rapidstab
