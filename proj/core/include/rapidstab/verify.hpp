#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rapidstab/csv.hpp"
#include "rapidstab/lti.hpp"
#include "rapidstab/quadrature.hpp"

namespace rapidstab {

struct VerifyCheck {
  enum class Status { kPass, kFail, kSkipped };

  std::string name;
  Status status = Status::kSkipped;
  double value = 0.0;
  std::string relation;  // how value compares against threshold to pass
  double threshold = 0.0;
  std::string detail;
};

std::string_view to_string(VerifyCheck::Status status);

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  /// True iff no check failed and at least one ran.
  bool passed() const;
  const VerifyCheck* first_failure() const;
  CsvTable to_table() const;
};

struct VerifyOptions {
  QuadratureOptions quad;
  std::optional<Eigen::VectorXd> x0;  // defaults to the all-ones vector
  double tFinal = 20.0;
  double dt = 1e-3;
};

/// Runs the certificate suite on the standard synthesis with knot T:
/// rank, Riccati residual, coercivity, similarity, decay rate, Lyapunov
/// envelope and decay-bound dominance. A rank failure skips the rest.
VerifyReport run_verify(const LtiSystem& sys, double omega, double T0, double T,
                        const VerifyOptions& options = {});

}  // namespace rapidstab
