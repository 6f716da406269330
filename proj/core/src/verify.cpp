#include "rapidstab/verify.hpp"

#include <algorithm>

#include "rapidstab/errors.hpp"
#include "rapidstab/feedback.hpp"
#include "rapidstab/gramian.hpp"
#include "rapidstab/sim.hpp"
#include "rapidstab/weight.hpp"

namespace rapidstab {
namespace {

using Status = VerifyCheck::Status;

VerifyCheck at_most(std::string name, double value, double threshold) {
  return {std::move(name), value <= threshold ? Status::kPass : Status::kFail, value, "<=",
          threshold, {}};
}

VerifyCheck at_least(std::string name, double value, double threshold) {
  return {std::move(name), value >= threshold ? Status::kPass : Status::kFail, value, ">=",
          threshold, {}};
}

VerifyCheck skipped(std::string name, std::string why) {
  VerifyCheck c;
  c.name = std::move(name);
  c.status = Status::kSkipped;
  c.detail = std::move(why);
  return c;
}

constexpr const char* kCheckNames[] = {
    "controllability_rank", "riccati_residual",   "coercivity_min_eigenvalue",
    "similarity_error",     "spectral_abscissa",  "lyapunov_max_violation",
    "bound_dominance",
};

}  // namespace

std::string_view to_string(VerifyCheck::Status status) {
  switch (status) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kSkipped: return "skipped";
  }
  return "unknown";
}

bool VerifyReport::passed() const {
  const bool any_ran = std::any_of(checks.begin(), checks.end(),
                                   [](const auto& c) { return c.status == Status::kPass; });
  return any_ran && first_failure() == nullptr;
}

const VerifyCheck* VerifyReport::first_failure() const {
  for (const auto& c : checks) {
    if (c.status == Status::kFail) return &c;
  }
  return nullptr;
}

CsvTable VerifyReport::to_table() const {
  CsvTable t;
  t.header = {"check", "status", "value", "relation", "threshold"};
  for (const auto& c : checks) {
    const bool ran = c.status != Status::kSkipped;
    t.add_row({c.name, std::string(to_string(c.status)), ran ? csv_number(c.value) : "",
               ran ? c.relation : "", ran ? csv_number(c.threshold) : ""});
  }
  return t;
}

VerifyReport run_verify(const LtiSystem& sys, double omega, double T0, double T,
                        const VerifyOptions& options) {
  VerifyReport report;
  const int rank = controllability_rank(sys);
  report.checks.push_back(at_least(kCheckNames[0], rank, sys.n()));
  if (rank < sys.n()) {
    for (std::size_t i = 1; i < std::size(kCheckNames); ++i) {
      report.checks.push_back(skipped(kCheckNames[i], "rank check failed"));
    }
    return report;
  }

  const WeightProfile weight(omega, T);
  GramianBundle g;
  try {
    g = weighted_gramian(sys, weight, options.quad);
  } catch (const QuadratureError&) {
    // Keep going with the finest rule so the failing residual is reported.
    g = weighted_gramian(sys, weight, QuadratureOptions::fixed(options.quad.max_nodes));
  }

  report.checks.push_back(at_most(kCheckNames[1], riccati_residual(sys, g), 1e-9));
  report.checks.push_back(at_least(kCheckNames[2], coercivity_margin(g, omega).min_eigenvalue, -1e-10));
  report.checks.push_back(at_most(kCheckNames[3], conjugate_generator(sys, g).similarity_error, 1e-8));

  const FeedbackLaw law = synthesize(sys, g);
  const double abscissa = spectral_abscissa(law.closed_loop);
  report.checks.push_back(at_most(kCheckNames[4], abscissa, -omega + 1e-9));

  const Eigen::VectorXd x0 = options.x0.value_or(Eigen::VectorXd::Ones(sys.n()));
  if (x0.size() != sys.n()) throw std::invalid_argument("verify: x0 has the wrong length");
  const Trajectory traj = integrate(law.closed_loop, x0, options.tFinal, options.dt);
  if (traj.diverged) {
    VerifyCheck c = at_most(kCheckNames[5], std::numeric_limits<double>::infinity(), 1e-6);
    c.detail = "trajectory diverged";
    report.checks.push_back(c);
  } else {
    report.checks.push_back(
        at_most(kCheckNames[5], lyapunov_profile(traj, g, omega).maxViolation, 1e-6));
  }

  const DecayBound bound = decay_bound(sys, omega, T0, T, options.quad);
  VerifyCheck dominance = at_most(kCheckNames[6], abscissa - bound.exponent, 1e-9);
  dominance.detail = "spectral abscissa minus bound exponent";
  report.checks.push_back(dominance);
  return report;
}

}  // namespace rapidstab
