#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "dcs/errors.hpp"
#include "dcs/weights.hpp"

namespace dcs::detail {

// sum_q (eps_s eps_t - eta_st^2) kappa_q^2 + 2 sum_q gamma_q kappa_s kappa_t
inline double quadratic_form(const FaceWeights& w, const Eigen::Vector3d& kappa) {
  double value = 0.0;
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3;
    const int t = (q + 2) % 3;
    value += -w.a_coeff(q) * kappa[q] * kappa[q] + 2.0 * w.gamma(q) * kappa[s] * kappa[t];
  }
  return value;
}

inline constexpr double kAcosSlack = 1e-14;

inline double clamped_acos(double arg) {
  if (!(std::abs(arg) <= 1.0 + kAcosSlack)) {
    throw Error(ErrorCode::DegenerateTriangle, "cosine argument " + std::to_string(arg) + " outside [-1, 1]");
  }
  if (arg >= 1.0) return 0.0;
  if (arg <= -1.0) return std::numbers::pi;
  return std::acos(arg);
}

}  // namespace dcs::detail
