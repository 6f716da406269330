#pragma once

#include <stdexcept>
#include <string>

namespace rapidstab {

/// Raised when a synthesis step needs Kalman rank n and the pair (A, B) has less.
class NotControllableError : public std::domain_error {
 public:
  NotControllableError(int rank, int n)
      : std::domain_error("system is not observable/controllable: Kalman rank " +
                          std::to_string(rank) + " < n = " + std::to_string(n)),
        rank_(rank) {}
  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

/// Quadrature refinement hit its node ceiling without certifying the Gramian.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The infinite-horizon integrand is not integrable for the requested omega.
class IntegrabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace rapidstab
