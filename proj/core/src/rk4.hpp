#pragma once

#include <Eigen/Dense>

namespace rapidstab::detail {

// One classical Runge-Kutta step of size h (negative h integrates backward).
template <typename Rhs>
Eigen::VectorXd rk4_step(const Rhs& f, double t, const Eigen::VectorXd& z, double h) {
  const Eigen::VectorXd k1 = f(t, z);
  const Eigen::VectorXd k2 = f(t + 0.5 * h, z + (0.5 * h) * k1);
  const Eigen::VectorXd k3 = f(t + 0.5 * h, z + (0.5 * h) * k2);
  const Eigen::VectorXd k4 = f(t + h, z + h * k3);
  return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace rapidstab::detail
