#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "dcs/weights.hpp"

namespace dcs {

enum class Background { Euclidean, Hyperbolic };

std::string_view background_name(Background b);
// Accepts "euclidean"/"hyperbolic" (also "e"/"h"); throws InvalidArgument otherwise.
Background parse_background(std::string_view text);

// Per-face derived data. Corner order matches the face triple; lengths[q] is the
// edge opposite corner q. Hyperbolic-only fields stay zero in Euclidean mode.
struct TriangleGeom {
  Eigen::Vector3d lengths = Eigen::Vector3d::Zero();
  Eigen::Vector3d cosh_lengths = Eigen::Vector3d::Zero();
  Eigen::Vector3d kappa = Eigen::Vector3d::Zero();
  Eigen::Vector3d h = Eigen::Vector3d::Zero();
  double q_value = 0.0;
  double g_term = 0.0;
  bool degenerate = false;
  int degenerate_corner = -1;  // corner whose V region contains the input, when degenerate
  Eigen::Vector3d angles = Eigen::Vector3d::Zero();  // extended values on degenerate input
  // A = 2 * Euclidean area, or sinh l_qs sinh l_qt sin(theta_q) in hyperbolic mode.
  double area_term = 0.0;
  bool has_jacobian = false;
  Eigen::Matrix3d jacobian = Eigen::Matrix3d::Zero();  // d theta / d u
};

// Per-vertex factors f plus the background. u is derived: u = f in Euclidean mode;
// in hyperbolic mode u = f where eps = 0 and u = -asinh(exp(-f)) where eps = 1.
struct ConformalState {
  Background background = Background::Euclidean;
  Eigen::VectorXd f;

  static ConformalState from_f(Background b, Eigen::VectorXd f) { return {b, std::move(f)}; }
  // Throws DomainError for a hyperbolic u with u >= 0 at an eps = 1 vertex.
  static ConformalState from_u(Background b, const Eigen::VectorXd& u, const std::vector<int>& epsilon);

  Eigen::VectorXd u(const std::vector<int>& epsilon) const;
  Eigen::VectorXd r() const { return f.array().exp(); }
};

double u_of_f(Background b, double f, int eps);
double f_of_u(Background b, double u, int eps);
// True when u is inside the domain of the u-parameterization (always in Euclidean mode).
bool u_in_domain(Background b, const Eigen::VectorXd& u, const std::vector<int>& epsilon);

// Evaluate one face at factors f (indexed by corner). Never throws on degenerate input;
// extended angles are filled in and the Jacobian is skipped.
TriangleGeom evaluate_face(Background b, const FaceWeights& w, const Eigen::Vector3d& f, bool with_jacobian);

}  // namespace dcs
