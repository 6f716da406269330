#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rapidstab/gramian.hpp"
#include "rapidstab/lti.hpp"
#include "rapidstab/quadrature.hpp"

namespace rapidstab {

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  double dt = 0.0;
  std::string method;
  bool diverged = false;  // integration stopped once ||x|| exceeded 1e12
};

/// Fixed-step classical RK4 for x' = Acl x, recording every step. The last
/// step is shortened to land exactly on tFinal.
Trajectory integrate(const Eigen::MatrixXd& Acl, const Eigen::VectorXd& x0, double tFinal,
                     double dt = 1e-3);

/// V(t) = x^T Lambda^{-1} x against the envelope e^{-2 omega t} V(0).
struct LyapunovProfile {
  std::vector<double> values;
  std::vector<double> envelope;
  double maxViolation = 0.0;  // max_i (V_i - envelope_i) / V(0)
};

LyapunovProfile lyapunov_profile(const Trajectory& traj, const GramianBundle& g, double omega);

/// Least-squares slope of log ||x(t)|| after discarding the first
/// settleFraction of the samples. When `angularFrequency` is given the
/// window is trimmed to a whole number of periods 2 pi / angularFrequency.
double fit_decay_rate(const Trajectory& traj, double settleFraction = 0.2,
                      std::optional<double> angularFrequency = std::nullopt);

/// |Im lambda| of an eigenvalue attaining the spectral abscissa (0 if real).
double dominant_frequency(const Eigen::MatrixXd& M);

struct SweepRow {
  double T = 0.0;
  double spectralAbscissa = 0.0;
  double boundExponent = 0.0;
  double conditionOfLambda = 0.0;
};

/// Standard synthesis with knot T for every T in Ts (rows computed
/// concurrently, returned in input order).
std::vector<SweepRow> sweep_T(const LtiSystem& sys, double omega, double T0,
                              std::span<const double> Ts, const QuadratureOptions& quad = {});

}  // namespace rapidstab
