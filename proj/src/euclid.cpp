#include "dcs/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dcs/errors.hpp"
#include "face_common.hpp"

namespace dcs {

double edge_length_e(double f_i, double f_j, int eps_i, int eps_j, double eta_ij) {
  const double ri = std::exp(f_i);
  const double rj = std::exp(f_j);
  const double radicand = eps_i * ri * ri + eps_j * rj * rj + 2.0 * eta_ij * ri * rj;
  if (!(radicand > 0.0)) {
    throw Error(ErrorCode::NonpositiveRadicand, "edge length radicand " + std::to_string(radicand));
  }
  return std::sqrt(radicand);
}

Eigen::Vector3d face_lengths_e(const FaceWeights& w, const Eigen::Vector3d& r) {
  Eigen::Vector3d l;
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3;
    const int t = (q + 2) % 3;
    const double radicand = w.eps[static_cast<std::size_t>(s)] * r[s] * r[s] +
                            w.eps[static_cast<std::size_t>(t)] * r[t] * r[t] +
                            2.0 * w.eta[static_cast<std::size_t>(q)] * r[s] * r[t];
    if (!(radicand > 0.0)) {
      throw Error(ErrorCode::NonpositiveRadicand, "edge opposite corner " + std::to_string(q));
    }
    l[q] = std::sqrt(radicand);
  }
  return l;
}

double q_value_e(const FaceWeights& w, const Eigen::Vector3d& r) {
  return detail::quadratic_form(w, r.cwiseInverse());
}

std::optional<double> degenerate_interval_e(const FaceWeights& w, int q, double r_s, double r_t) {
  if (q < 0 || q > 2) throw Error(ErrorCode::CornerNotInFace, "corner index " + std::to_string(q));
  if (!(r_s > 0.0) || !(r_t > 0.0)) throw Error(ErrorCode::NonpositiveKappa, "radii must be positive");
  const CornerQuadratic cq = corner_quadratic(w, q, 1.0 / r_s, 1.0 / r_t, 0.0);
  if (!(cq.a > 0.0)) return std::nullopt;
  const double denom = -cq.b + std::sqrt(std::max(cq.discriminant(), 0.0));
  if (!(denom > 0.0)) return std::nullopt;
  return 2.0 * cq.a / denom;
}

Eigen::Vector3d angles_e(double l_ij, double l_ik, double l_jk) {
  if (!(l_ij > 0.0) || !(l_ik > 0.0) || !(l_jk > 0.0)) {
    throw Error(ErrorCode::DegenerateTriangle, "edge lengths must be positive");
  }
  const auto corner = [](double a, double b, double opp) {
    const double arg = (a * a + b * b - opp * opp) / (2.0 * a * b);
    return detail::clamped_acos(arg);
  };
  return {corner(l_ij, l_ik, l_jk), corner(l_ij, l_jk, l_ik), corner(l_ik, l_jk, l_ij)};
}

namespace {

int classify_e(const FaceWeights& w, const Eigen::Vector3d& r, const Eigen::Vector3d& h) {
  for (int q = 0; q < 3; ++q) {
    auto threshold = degenerate_interval_e(w, q, r[(q + 1) % 3], r[(q + 2) % 3]);
    if (threshold && r[q] <= *threshold) return q;
  }
  // Boundary round-off: the region is the one whose h is negative.
  int q = 0;
  h.minCoeff(&q);
  return q;
}

}  // namespace

TriangleGeom evaluate_e(const FaceWeights& w, const Eigen::Vector3d& f, bool with_jacobian) {
  TriangleGeom g;
  const Eigen::Vector3d r = f.array().exp();
  g.kappa = r.cwiseInverse();
  g.h = h_values_unchecked(g.kappa, w);
  g.q_value = detail::quadratic_form(w, g.kappa);
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3;
    const int t = (q + 2) % 3;
    const double radicand = w.eps[static_cast<std::size_t>(s)] * r[s] * r[s] +
                            w.eps[static_cast<std::size_t>(t)] * r[t] * r[t] +
                            2.0 * w.eta[static_cast<std::size_t>(q)] * r[s] * r[t];
    g.lengths[q] = std::sqrt(std::max(radicand, 0.0));
  }
  g.degenerate = !(g.q_value > 0.0);
  if (g.degenerate) {
    g.degenerate_corner = classify_e(w, r, g.h);
    g.angles.setZero();
    g.angles[g.degenerate_corner] = std::numbers::pi;
    return g;
  }

  const double rrr = r[0] * r[1] * r[2];
  g.area_term = rrr * std::sqrt(g.q_value);
  const Eigen::Vector3d l2 = g.lengths.cwiseProduct(g.lengths);
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3;
    const int t = (q + 2) % 3;
    // l_qs is opposite t, l_qt opposite s.
    g.angles[q] = std::atan2(2.0 * g.area_term, l2[t] + l2[s] - l2[q]);
  }

  if (with_jacobian) {
    for (int q = 0; q < 3; ++q) {
      for (int s = q + 1; s < 3; ++s) {
        const int t = 3 - q - s;
        const double entry = r[q] * r[q] * r[s] * r[s] * r[t] * g.h[t] / (g.area_term * l2[t]);
        g.jacobian(q, s) = entry;
        g.jacobian(s, q) = entry;
      }
    }
    for (int q = 0; q < 3; ++q) {
      g.jacobian(q, q) = -(g.jacobian(q, (q + 1) % 3) + g.jacobian(q, (q + 2) % 3));
    }
    g.has_jacobian = true;
  }
  return g;
}

Eigen::Vector3d extended_angles_e(const FaceWeights& w, const Eigen::Vector3d& r) {
  for (int q = 0; q < 3; ++q) {
    if (!(r[q] > 0.0)) throw Error(ErrorCode::NonpositiveKappa, "radii must be positive");
  }
  return evaluate_e(w, r.array().log().matrix(), false).angles;
}

Eigen::Matrix3d jacobian_e(const FaceWeights& w, const Eigen::Vector3d& r) {
  const TriangleGeom g = evaluate_e(w, r.array().log().matrix(), true);
  if (g.degenerate) {
    throw Error(ErrorCode::DegenerateTriangle, "Q^E = " + std::to_string(g.q_value));
  }
  return g.jacobian;
}

CenterData center_data_e(const FaceWeights& w, const Eigen::Vector3d& r) {
  const TriangleGeom g = evaluate_e(w, r.array().log().matrix(), false);
  if (g.degenerate) {
    throw Error(ErrorCode::DegenerateTriangle, "Q^E = " + std::to_string(g.q_value));
  }
  CenterData c;
  const double rrr2 = r[0] * r[0] * r[1] * r[1] * r[2] * r[2];
  for (int q = 0; q < 3; ++q) {
    for (int s = 0; s < 3; ++s) {
      if (s == q) continue;
      const int t = 3 - q - s;
      const double l_qs = g.lengths[t];
      c.d(q, s) = (w.eps[static_cast<std::size_t>(q)] * r[q] * r[q] + w.eta[static_cast<std::size_t>(t)] * r[q] * r[s]) / l_qs;
    }
    c.h_center[q] = rrr2 * g.kappa[q] * g.h[q] / (g.area_term * g.lengths[q]);
  }
  return c;
}

}  // namespace dcs
