#include "rapidstab/demo_systems.hpp"

#include <algorithm>
#include <charconv>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

namespace rapidstab {
namespace {

// Uniform in [-1, 1] from the raw 64-bit output; avoids the
// implementation-defined distribution classes.
double uniform_pm1(std::mt19937_64& gen) {
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("demo: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

LtiSystem demo_oscillator() {
  Eigen::MatrixXd A(2, 2);
  A << 0.0, 1.0,
      -1.0, 0.0;
  Eigen::MatrixXd B(2, 1);
  B << 0.0, 1.0;
  return LtiSystem::make(std::move(A), std::move(B), "oscillator");
}

LtiSystem demo_scalar() {
  return LtiSystem::make(Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Ones(1, 1), "scalar");
}

LtiSystem demo_string(int n, int controlWidth) {
  if (n < 2) throw std::invalid_argument("demo string: n must be >= 2");
  if (controlWidth < 1 || controlWidth > n) {
    throw std::invalid_argument("demo string: controlWidth must lie in [1, n]");
  }
  const double h = 1.0 / (n + 1);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    K(i, i) = 2.0 / (h * h);
    if (i + 1 < n) {
      K(i, i + 1) = -1.0 / (h * h);
      K(i + 1, i) = -1.0 / (h * h);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
  Eigen::MatrixXd S = eig.operatorSqrt();
  S = 0.5 * (S + S.transpose()).eval();

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  A.topRightCorner(n, n) = S;
  A.bottomLeftCorner(n, n) = -S;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(2 * n, 1);
  B.block(n, 0, controlWidth, 1).setOnes();
  return LtiSystem::make(std::move(A), std::move(B),
                         "string(" + std::to_string(n) + "," + std::to_string(controlWidth) + ")");
}

LtiSystem demo_skew(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("demo skew: n must be >= 1");
  std::mt19937_64 gen(seed);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      A(i, j) = uniform_pm1(gen);
      A(j, i) = -A(i, j);
    }
  }
  const int m = std::min(n, 2);
  Eigen::MatrixXd B(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) B(i, j) = uniform_pm1(gen);
  }
  return LtiSystem::make(std::move(A), std::move(B),
                         "skew(" + std::to_string(n) + "," + std::to_string(seed) + ")");
}

LtiSystem demo_system(std::string_view spec, std::uint64_t seed) {
  const auto parts = split(spec, ':');
  const auto name = parts.front();
  if (name == "oscillator" && parts.size() == 1) return demo_oscillator();
  if (name == "scalar" && parts.size() == 1) return demo_scalar();
  if (name == "string" && (parts.size() == 2 || parts.size() == 3)) {
    const int n = static_cast<int>(parse_uint(parts[1], "string size"));
    const int width = parts.size() == 3 ? static_cast<int>(parse_uint(parts[2], "control width"))
                                        : kDefaultStringControlWidth;
    return demo_string(n, width);
  }
  if (name == "skew" && (parts.size() == 2 || parts.size() == 3)) {
    const int n = static_cast<int>(parse_uint(parts[1], "skew size"));
    return demo_skew(n, parts.size() == 3 ? parse_uint(parts[2], "seed") : seed);
  }
  throw std::invalid_argument("unknown demo system '" + std::string(spec) +
                              "' (expected oscillator | scalar | string:N[:WIDTH] | skew:N[:SEED])");
}

}  // namespace rapidstab
