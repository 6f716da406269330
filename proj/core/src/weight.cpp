#include "rapidstab/weight.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rapidstab {

WeightProfile::WeightProfile(double omega, double knot) : omega_(omega), knot_(knot) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("weight: omega must be positive and finite");
  }
  if (!(knot > 0.0) || !std::isfinite(knot)) {
    throw std::invalid_argument("weight: knot must be positive and finite");
  }
}

void WeightProfile::check_domain(double s) const {
  if (!(s >= 0.0 && s <= end())) {
    throw std::domain_error("weight: s = " + std::to_string(s) + " outside [0, " +
                            std::to_string(end()) + "]");
  }
}

double WeightProfile::value(double s) const {
  check_domain(s);
  if (s <= knot_) return std::exp(-2.0 * omega_ * s);
  return 2.0 * omega_ * std::exp(-2.0 * omega_ * knot_) * (end() - s);
}

double WeightProfile::derivative(double s) const {
  check_domain(s);
  if (s <= knot_) return -2.0 * omega_ * std::exp(-2.0 * omega_ * s);
  return -2.0 * omega_ * std::exp(-2.0 * omega_ * knot_);
}

}  // namespace rapidstab
