#include "rapidstab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "rapidstab/feedback.hpp"
#include "rk4.hpp"

namespace rapidstab {

Trajectory integrate(const Eigen::MatrixXd& Acl, const Eigen::VectorXd& x0, double tFinal,
                     double dt) {
  if (Acl.rows() != Acl.cols() || Acl.rows() != x0.size()) {
    throw std::invalid_argument("integrate: dimension mismatch");
  }
  if (!(tFinal > 0.0) || !std::isfinite(tFinal)) {
    throw std::invalid_argument("integrate: tFinal must be positive");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrate: dt must be positive");
  if (dt < 64.0 * std::numeric_limits<double>::epsilon() * tFinal) {
    throw std::invalid_argument("integrate: step size underflow");
  }

  const auto rhs = [&Acl](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return Acl * x;
  };
  // Integer step count; tolerate tFinal/dt landing a hair above an integer.
  const auto full = static_cast<long>(std::floor(tFinal / dt * (1.0 + 1e-12)));
  const double remainder = tFinal - static_cast<double>(full) * dt;
  const bool partial = remainder > 1e-9 * dt;

  Trajectory traj;
  traj.dt = dt;
  traj.method = "rk4";
  traj.times.reserve(full + 2);
  traj.states.reserve(full + 2);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);

  Eigen::VectorXd x = x0;
  const long steps = full + (partial ? 1 : 0);
  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double h = (partial && k == full) ? remainder : dt;
    x = detail::rk4_step(rhs, t, x, h);
    const double t_next = (k + 1 == steps) ? tFinal : static_cast<double>(k + 1) * dt;
    if (!x.allFinite() || x.norm() > 1e12) {
      traj.diverged = true;
      break;
    }
    traj.times.push_back(t_next);
    traj.states.push_back(x);
  }
  return traj;
}

LyapunovProfile lyapunov_profile(const Trajectory& traj, const GramianBundle& g, double omega) {
  const Eigen::Index n = g.lambda.rows();
  const Eigen::LLT<Eigen::MatrixXd> llt(g.lambda);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("lyapunov_profile: Lambda is not positive definite");
  }
  LyapunovProfile p;
  p.values.reserve(traj.states.size());
  p.envelope.reserve(traj.states.size());
  for (const auto& x : traj.states) {
    if (x.size() != n) throw std::invalid_argument("lyapunov_profile: dimension mismatch");
    p.values.push_back(x.dot(llt.solve(x)));
  }
  if (p.values.empty()) return p;
  const double v0 = p.values.front();
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    p.envelope.push_back(std::exp(-2.0 * omega * traj.times[i]) * v0);
  }
  if (v0 > 0.0) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      worst = std::max(worst, (p.values[i] - p.envelope[i]) / v0);
    }
    p.maxViolation = worst;
  }
  return p;
}

double fit_decay_rate(const Trajectory& traj, double settleFraction,
                      std::optional<double> angularFrequency) {
  if (traj.diverged) throw std::invalid_argument("fit_decay_rate: trajectory diverged");
  if (!(settleFraction >= 0.0 && settleFraction < 1.0)) {
    throw std::invalid_argument("fit_decay_rate: settleFraction must lie in [0, 1)");
  }
  const std::size_t count = traj.times.size();
  auto first = static_cast<std::size_t>(std::floor(settleFraction * static_cast<double>(count)));
  std::size_t last = count;  // exclusive
  if (angularFrequency && *angularFrequency > 0.0 && first < count) {
    const double period = 2.0 * std::numbers::pi / *angularFrequency;
    const double span = traj.times[count - 1] - traj.times[first];
    const double periods = std::floor(span / period);
    if (periods >= 1.0) {
      const double stop = traj.times[first] + periods * period;
      const auto it = std::upper_bound(traj.times.begin() + static_cast<long>(first),
                                       traj.times.end(), stop + 1e-12);
      last = static_cast<std::size_t>(it - traj.times.begin());
    }
  }
  if (last < first + 100) {
    throw std::invalid_argument("fit_decay_rate: fewer than 100 samples in the fit window");
  }

  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const auto k = static_cast<double>(last - first);
  for (std::size_t i = first; i < last; ++i) {
    const double nrm = traj.states[i].norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("fit_decay_rate: zero state in fit window");
    const double t = traj.times[i];
    const double y = std::log(nrm);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  return (k * sty - st * sy) / (k * stt - st * st);
}

double dominant_frequency(const Eigen::MatrixXd& M) {
  const Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  const Eigen::VectorXcd ev = es.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (ev(i).real() > ev(best).real()) best = i;
  }
  // Among eigenvalues tied with the abscissa, report the largest |Im|.
  double freq = 0.0;
  const double scale = std::max(1.0, std::abs(ev(best).real()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).real() - ev(best).real()) <= 1e-12 * scale) {
      freq = std::max(freq, std::abs(ev(i).imag()));
    }
  }
  return freq;
}

std::vector<SweepRow> sweep_T(const LtiSystem& sys, double omega, double T0,
                              std::span<const double> Ts, const QuadratureOptions& quad) {
  for (const double T : Ts) {
    if (!(T >= T0)) throw std::invalid_argument("sweep_T: every T must satisfy T >= T0");
  }
  std::vector<std::future<SweepRow>> pending;
  pending.reserve(Ts.size());
  for (const double T : Ts) {
    pending.push_back(std::async(std::launch::async, [&sys, omega, T0, T, &quad] {
      const GramianBundle g = weighted_gramian(sys, WeightProfile(omega, T), quad);
      const FeedbackLaw law = synthesize(sys, g);
      SweepRow row;
      row.T = T;
      row.spectralAbscissa = spectral_abscissa(law.closed_loop);
      row.boundExponent = decay_bound(sys, omega, T0, T, quad).exponent;
      row.conditionOfLambda = g.condition_number;
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(Ts.size());
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

}  // namespace rapidstab
