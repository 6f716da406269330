#pragma once

namespace rapidstab {

/// Piecewise weight: e^{-2 omega s} on [0, knot], then a linear ramp reaching
/// zero at end = knot + 1/(2 omega). The ramp slope makes the weight C^1.
class WeightProfile {
 public:
  /// Throws std::invalid_argument unless omega > 0 and knot > 0 (both finite).
  WeightProfile(double omega, double knot);

  double omega() const { return omega_; }
  double knot() const { return knot_; }
  double end() const { return knot_ + 0.5 / omega_; }

  /// Throws std::domain_error for s outside [0, end].
  double value(double s) const;
  double derivative(double s) const;

 private:
  void check_domain(double s) const;

  double omega_;
  double knot_;
};

}  // namespace rapidstab
