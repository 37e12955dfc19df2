#include "dcs/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "dcs/curvature.hpp"
#include "dcs/errors.hpp"

namespace dcs {

namespace {

constexpr int kNodes = 16;
constexpr int kMaxDepth = 40;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GaussLegendre {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> w{};
};

// Roots of P_16 by Newton from the Chebyshev guesses.
GaussLegendre make_rule() {
  GaussLegendre rule;
  for (int i = 0; i < kNodes; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (kNodes + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= kNodes; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kNodes * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.x[static_cast<std::size_t>(i)] = z;
    rule.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

const GaussLegendre& rule() {
  static const GaussLegendre r = make_rule();
  return r;
}

double gl_segment(const std::function<double(double)>& g, double a, double b) {
  const GaussLegendre& r = rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kNodes; ++i) sum += r.w[static_cast<std::size_t>(i)] * g(mid + half * r.x[static_cast<std::size_t>(i)]);
  return sum * half;
}

double refine(const std::function<double(double)>& g, double a, double b, double whole, double tol, int depth,
              QuadratureInfo& info) {
  const double m = 0.5 * (a + b);
  const double left = gl_segment(g, a, m);
  const double right = gl_segment(g, m, b);
  if (depth >= kMaxDepth || std::abs(left + right - whole) < tol) {
    info.segments += 2;
    info.max_depth = std::max(info.max_depth, depth + 1);
    return left + right;
  }
  return refine(g, a, m, left, tol, depth + 1, info) + refine(g, m, b, right, tol, depth + 1, info);
}

Eigen::Vector3d corner_f(const FaceWeights& w, const Eigen::Vector3d& u, Background b) {
  Eigen::Vector3d f;
  for (int q = 0; q < 3; ++q) f[q] = f_of_u(b, u[q], w.eps[static_cast<std::size_t>(q)]);
  return f;
}

Eigen::Vector3d corner_u(const TriangulatedSurface& surface, const Eigen::VectorXd& u, int face) {
  const Face& t = surface.face(face);
  return {u[t[0]], u[t[1]], u[t[2]]};
}

void check_u_size(const WeightedSurface& ws, const Eigen::VectorXd& u) {
  if (u.size() != ws.surface().vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "u has " + std::to_string(u.size()) + " entries for " +
                                                std::to_string(ws.surface().vertex_count()) + " vertices");
  }
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& g, double a, double b, double tol,
                          QuadratureInfo* info) {
  QuadratureInfo local;
  QuadratureInfo& out = info ? *info : local;
  if (a == b) return 0.0;
  return refine(g, a, b, gl_segment(g, a, b), tol, 0, out);
}

double triangle_energy(const FaceWeights& w, const Eigen::Vector3d& u_target, const Eigen::Vector3d& u_base,
                       Background b, bool extended, QuadratureInfo* info) {
  // Validates the hyperbolic domain at both endpoints; the box is convex so the segment stays inside.
  corner_f(w, u_target, b);
  corner_f(w, u_base, b);
  const Eigen::Vector3d du = u_target - u_base;
  if (du.isZero(0.0)) return 0.0;
  auto integrand = [&](double s) {
    const TriangleGeom g = evaluate_face(b, w, corner_f(w, u_base + s * du, b), false);
    if (!extended && g.degenerate) {
      throw Error(ErrorCode::PathLeavesAdmissible, "segment crosses a degenerate configuration at s = " +
                                                       std::to_string(s));
    }
    return g.angles.dot(du);
  };
  return integrate_adaptive(integrand, 0.0, 1.0, 1e-10, info);
}

Eigen::VectorXd energy_base_point(const WeightedSurface& ws, Background b) {
  const int n = ws.surface().vertex_count();
  Eigen::VectorXd base = Eigen::VectorXd::Zero(n);
  if (b == Background::Euclidean) return base;
  for (int i = 0; i < n; ++i) {
    if (ws.epsilon(i) == 1) base[i] = -1.0;
  }
  // Diagonal shifts 0, -0.5, +0.5, -1, ... keeping u < 0 where eps = 1.
  for (int k = 0; k <= 16; ++k) {
    const double shift = (k % 2 == 1 ? -1.0 : 1.0) * 0.5 * ((k + 1) / 2);
    const Eigen::VectorXd candidate = base.array() + shift;
    if (!u_in_domain(b, candidate, ws.scheme().epsilon)) continue;
    const ConformalState state = ConformalState::from_u(b, candidate, ws.scheme().epsilon);
    if (evaluate_surface(ws, state, false).degenerate_faces.empty()) return candidate;
  }
  return base;
}

EnergyReport ricci_energy_report(const WeightedSurface& ws, const Eigen::VectorXd& u, Background b, bool extended) {
  check_u_size(ws, u);
  EnergyReport report;
  report.base_point = energy_base_point(ws, b);
  double faces = 0.0;
  const TriangulatedSurface& surface = ws.surface();
  for (int fi = 0; fi < surface.face_count(); ++fi) {
    faces += triangle_energy(ws.face_weights(fi), corner_u(surface, u, fi), corner_u(surface, report.base_point, fi),
                             b, extended, &report.quadrature);
  }
  report.value = kTwoPi * (u - report.base_point).sum() - faces;
  return report;
}

double ricci_energy(const WeightedSurface& ws, const Eigen::VectorXd& u, Background b, bool extended) {
  return ricci_energy_report(ws, u, b, extended).value;
}

void check_target(const TriangulatedSurface& surface, const Eigen::VectorXd& k_bar, Background b) {
  if (k_bar.size() != surface.vertex_count()) {
    throw Error(ErrorCode::BadTarget, "target has " + std::to_string(k_bar.size()) + " entries for " +
                                          std::to_string(surface.vertex_count()) + " vertices");
  }
  for (Eigen::Index i = 0; i < k_bar.size(); ++i) {
    if (!(k_bar[i] < kTwoPi)) {
      throw Error(ErrorCode::BadTarget, "target at vertex " + std::to_string(i) + " is not below 2 pi");
    }
  }
  const double gauss_bonnet = kTwoPi * surface.euler_characteristic();
  const double sum = k_bar.sum();
  if (b == Background::Euclidean && std::abs(sum - gauss_bonnet) > 1e-8) {
    throw Error(ErrorCode::BadTarget, "target sums to " + std::to_string(sum) + ", expected 2 pi chi = " +
                                          std::to_string(gauss_bonnet));
  }
  if (b == Background::Hyperbolic && !(sum > gauss_bonnet)) {
    throw Error(ErrorCode::BadTarget, "target sums to " + std::to_string(sum) + ", must exceed 2 pi chi = " +
                                          std::to_string(gauss_bonnet));
  }
}

double target_potential(const WeightedSurface& ws, const Eigen::VectorXd& u, const Eigen::VectorXd& k_bar,
                        Background b, bool extended) {
  check_target(ws.surface(), k_bar, b);
  return ricci_energy(ws, u, b, extended) - k_bar.dot(u);
}

double potential_difference(const WeightedSurface& ws, const Eigen::VectorXd& u0, const Eigen::VectorXd& u1,
                            const Eigen::VectorXd& k_bar, Background b) {
  check_u_size(ws, u0);
  check_u_size(ws, u1);
  const std::vector<int>& eps = ws.scheme().epsilon;
  if (!u_in_domain(b, u0, eps) || !u_in_domain(b, u1, eps)) {
    throw Error(ErrorCode::DomainError, "potential endpoints outside the u domain");
  }
  const Eigen::VectorXd du = u1 - u0;
  auto integrand = [&](double s) {
    const ConformalState state = ConformalState::from_u(b, u0 + s * du, eps);
    return (evaluate_surface(ws, state, false).curvature - k_bar).dot(du);
  };
  return integrate_adaptive(integrand, 0.0, 1.0, 1e-12);
}

double calabi_energy(const WeightedSurface& ws, const Eigen::VectorXd& u, const Eigen::VectorXd& k_bar,
                     Background b) {
  const ConformalState state = ConformalState::from_u(b, u, ws.scheme().epsilon);
  const CurvatureField k = vertex_curvature(ws, state, false);
  if (k_bar.size() != k.values.size()) throw Error(ErrorCode::BadTarget, "target size mismatch");
  return 0.5 * (k_bar - k.values).squaredNorm();
}

Eigen::VectorXd calabi_gradient(const WeightedSurface& ws, const Eigen::VectorXd& u, const Eigen::VectorXd& k_bar,
                                Background b) {
  const ConformalState state = ConformalState::from_u(b, u, ws.scheme().epsilon);
  SurfaceGeometry geom = evaluate_surface(ws, state, true);
  if (!geom.degenerate_faces.empty()) {
    throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(geom.degenerate_faces.front()) + " is degenerate");
  }
  if (k_bar.size() != geom.curvature.size()) throw Error(ErrorCode::BadTarget, "target size mismatch");
  return -geom.lambda * (k_bar - geom.curvature);
}

}  // namespace dcs
