#include "dcs/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dcs/errors.hpp"
#include "face_common.hpp"

namespace dcs {

namespace {

struct VertexData {
  double s = 1.0;        // exp(f)
  double c_minus_1 = 0;  // C - 1, kept separately to avoid cancellation in cosh l - 1
  double kappa = 1.0;    // C / S
};

VertexData vertex_data(double f, int eps) {
  VertexData v;
  v.s = std::exp(f);
  const double c = std::sqrt(1.0 + eps * v.s * v.s);
  v.c_minus_1 = eps * v.s * v.s / (c + 1.0);
  v.kappa = std::sqrt(std::exp(-2.0 * f) + eps);
  return v;
}

// cosh l - 1 for the edge between two vertices.
double cosh_excess(const VertexData& a, const VertexData& b, double eta) {
  return a.c_minus_1 * b.c_minus_1 + a.c_minus_1 + b.c_minus_1 + eta * a.s * b.s;
}

double acosh_from_excess(double x) { return std::log1p(x + std::sqrt(x * (x + 2.0))); }

int classify_h(const FaceWeights& w, const Eigen::Vector3d& f, const Eigen::Vector3d& h) {
  for (int q = 0; q < 3; ++q) {
    try {
      auto threshold = degenerate_interval_h(w, q, f[(q + 1) % 3], f[(q + 2) % 3]);
      if (threshold && f[q] <= *threshold) return q;
    } catch (const Error&) {
      // NoRealThreshold: this corner cannot host the region.
    }
  }
  int q = 0;
  h.minCoeff(&q);
  return q;
}

}  // namespace

double u_of_f_h(double f, int eps) {
  if (eps == 0) return f;
  return -std::asinh(std::exp(-f));
}

double f_of_u_h(double u, int eps) {
  if (eps == 0) return u;
  if (!(u < 0.0)) throw Error(ErrorCode::DomainError, "u = " + std::to_string(u) + " must be negative where eps = 1");
  const double a = -u;
  // exp(-f) = sinh(a); for large a use ln sinh a = a - ln 2 + log1p(-exp(-2a)).
  if (a > 1.0) return -a + std::numbers::ln2 - std::log1p(-std::exp(-2.0 * a));
  return -std::log(std::sinh(a));
}

double edge_length_h(double f_i, double f_j, int eps_i, int eps_j, double eta_ij) {
  const double x = cosh_excess(vertex_data(f_i, eps_i), vertex_data(f_j, eps_j), eta_ij);
  if (!(x > 0.0)) {
    throw Error(ErrorCode::ArgumentNotAboveOne, "cosh l - 1 = " + std::to_string(x));
  }
  return acosh_from_excess(x);
}

Eigen::Vector3d face_cosh_lengths_h(const FaceWeights& w, const Eigen::Vector3d& f) {
  VertexData v[3];
  for (int q = 0; q < 3; ++q) v[q] = vertex_data(f[q], w.eps[static_cast<std::size_t>(q)]);
  Eigen::Vector3d c;
  for (int q = 0; q < 3; ++q) {
    c[q] = 1.0 + cosh_excess(v[(q + 1) % 3], v[(q + 2) % 3], w.eta[static_cast<std::size_t>(q)]);
  }
  return c;
}

double q_value_h(const FaceWeights& w, const Eigen::Vector3d& f) {
  Eigen::Vector3d kappa;
  for (int q = 0; q < 3; ++q) kappa[q] = vertex_data(f[q], w.eps[static_cast<std::size_t>(q)]).kappa;
  return detail::quadratic_form(w, kappa) + w.g_term();
}

std::optional<double> degenerate_interval_h(const FaceWeights& w, int q, double f_s, double f_t) {
  if (q < 0 || q > 2) throw Error(ErrorCode::CornerNotInFace, "corner index " + std::to_string(q));
  const int s = (q + 1) % 3;
  const int t = (q + 2) % 3;
  const double ks = vertex_data(f_s, w.eps[static_cast<std::size_t>(s)]).kappa;
  const double kt = vertex_data(f_t, w.eps[static_cast<std::size_t>(t)]).kappa;
  const CornerQuadratic cq = corner_quadratic(w, q, ks, kt, w.g_term());
  if (!(cq.a > 0.0)) return std::nullopt;
  const double kstar = cq.upper_root();
  const double arg = kstar * kstar - w.eps[static_cast<std::size_t>(q)];
  if (!(kstar > 0.0) || !(arg > 0.0)) {
    throw Error(ErrorCode::NoRealThreshold, "kappa threshold " + std::to_string(kstar) + " gives log argument " +
                                                std::to_string(arg));
  }
  return -0.5 * std::log(arg);
}

Eigen::Vector3d angles_h(double cosh_ij, double cosh_ik, double cosh_jk) {
  if (!(cosh_ij > 1.0) || !(cosh_ik > 1.0) || !(cosh_jk > 1.0)) {
    throw Error(ErrorCode::DegenerateTriangle, "cosh of every side must exceed 1");
  }
  const auto sh = [](double c) { return std::sqrt((c - 1.0) * (c + 1.0)); };
  const auto corner = [&](double a, double b, double opp) {
    return detail::clamped_acos((a * b - opp) / (sh(a) * sh(b)));
  };
  return {corner(cosh_ij, cosh_ik, cosh_jk), corner(cosh_ij, cosh_jk, cosh_ik), corner(cosh_ik, cosh_jk, cosh_ij)};
}

TriangleGeom evaluate_h(const FaceWeights& w, const Eigen::Vector3d& f, bool with_jacobian) {
  TriangleGeom g;
  VertexData v[3];
  for (int q = 0; q < 3; ++q) {
    v[q] = vertex_data(f[q], w.eps[static_cast<std::size_t>(q)]);
    g.kappa[q] = v[q].kappa;
  }
  Eigen::Vector3d excess;
  for (int q = 0; q < 3; ++q) {
    excess[q] = cosh_excess(v[(q + 1) % 3], v[(q + 2) % 3], w.eta[static_cast<std::size_t>(q)]);
    g.cosh_lengths[q] = 1.0 + excess[q];
    g.lengths[q] = acosh_from_excess(std::max(excess[q], 0.0));
  }
  g.h = h_values_unchecked(g.kappa, w);
  g.g_term = w.g_term();
  g.q_value = detail::quadratic_form(w, g.kappa) + g.g_term;
  g.degenerate = !(g.q_value > 0.0);
  if (g.degenerate) {
    g.degenerate_corner = classify_h(w, f, g.h);
    g.angles.setZero();
    g.angles[g.degenerate_corner] = std::numbers::pi;
    return g;
  }

  g.area_term = v[0].s * v[1].s * v[2].s * std::sqrt(g.q_value);
  const Eigen::Vector3d& c = g.cosh_lengths;
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3;
    const int t = (q + 2) % 3;
    g.angles[q] = std::atan2(g.area_term, c[t] * c[s] - c[q]);
  }

  if (with_jacobian) {
    for (int q = 0; q < 3; ++q) {
      for (int s = q + 1; s < 3; ++s) {
        const int t = 3 - q - s;
        const double sinh2 = excess[t] * (excess[t] + 2.0);
        const double entry = v[q].s * v[q].s * v[s].s * v[s].s * v[t].s * g.h[t] / (g.area_term * sinh2);
        g.jacobian(q, s) = entry;
        g.jacobian(s, q) = entry;
      }
    }
    for (int q = 0; q < 3; ++q) {
      const int s = (q + 1) % 3;
      const int t = (q + 2) % 3;
      // c[t] = cosh l_qs, c[s] = cosh l_qt
      g.jacobian(q, q) = -(g.jacobian(s, q) * c[t] + g.jacobian(t, q) * c[s]);
    }
    g.has_jacobian = true;
  }
  return g;
}

Eigen::Vector3d extended_angles_h(const FaceWeights& w, const Eigen::Vector3d& f) {
  return evaluate_h(w, f, false).angles;
}

Eigen::Matrix3d jacobian_h(const FaceWeights& w, const Eigen::Vector3d& f) {
  const TriangleGeom g = evaluate_h(w, f, true);
  if (g.degenerate) throw Error(ErrorCode::DegenerateTriangle, "Q^H = " + std::to_string(g.q_value));
  return g.jacobian;
}

double triangle_area_h(double l_ij, double l_ik, double l_jk) {
  const double p = std::tanh((l_ij + l_ik + l_jk) / 4.0) * std::tanh((l_ij + l_ik - l_jk) / 4.0) *
                   std::tanh((l_ij - l_ik + l_jk) / 4.0) * std::tanh((-l_ij + l_ik + l_jk) / 4.0);
  if (!(p > 0.0)) throw Error(ErrorCode::DegenerateTriangle, "side lengths violate the triangle inequality");
  return 4.0 * std::atan(std::sqrt(p));
}

LengthBounds length_bounds_h(int eps_j, double eta_ij) {
  if (!(eps_j + eta_ij > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "edge weights violate eps_i eps_j + eta > 0");
  }
  LengthBounds b;
  b.mu = 1.0 + std::abs(eta_ij);
  if (eps_j == 1 && eta_ij <= 0.0) {
    b.lambda = 0.5 * (1.0 + eta_ij);
  } else {
    b.lambda = std::min(1.0, eta_ij);
  }
  return b;
}

}  // namespace dcs
