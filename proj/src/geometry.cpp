#include "dcs/geometry.hpp"

#include <cmath>
#include <string>

#include "dcs/errors.hpp"
#include "dcs/euclid.hpp"
#include "dcs/hyper.hpp"

namespace dcs {

std::string_view background_name(Background b) {
  return b == Background::Euclidean ? "euclidean" : "hyperbolic";
}

Background parse_background(std::string_view text) {
  if (text == "euclidean" || text == "e") return Background::Euclidean;
  if (text == "hyperbolic" || text == "h") return Background::Hyperbolic;
  throw Error(ErrorCode::InvalidArgument, "unknown background '" + std::string(text) + "'");
}

double u_of_f(Background b, double f, int eps) {
  return b == Background::Euclidean ? f : u_of_f_h(f, eps);
}

double f_of_u(Background b, double u, int eps) {
  return b == Background::Euclidean ? u : f_of_u_h(u, eps);
}

bool u_in_domain(Background b, const Eigen::VectorXd& u, const std::vector<int>& epsilon) {
  if (b == Background::Euclidean) return u.allFinite();
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) return false;
    if (epsilon[static_cast<std::size_t>(i)] == 1 && !(u[i] < 0.0)) return false;
  }
  return true;
}

ConformalState ConformalState::from_u(Background b, const Eigen::VectorXd& u, const std::vector<int>& epsilon) {
  if (static_cast<std::size_t>(u.size()) != epsilon.size()) {
    throw Error(ErrorCode::InvalidArgument, "u has " + std::to_string(u.size()) + " entries, expected " +
                                                std::to_string(epsilon.size()));
  }
  ConformalState s{b, Eigen::VectorXd(u.size())};
  for (Eigen::Index i = 0; i < u.size(); ++i) s.f[i] = f_of_u(b, u[i], epsilon[static_cast<std::size_t>(i)]);
  return s;
}

Eigen::VectorXd ConformalState::u(const std::vector<int>& epsilon) const {
  if (static_cast<std::size_t>(f.size()) != epsilon.size()) {
    throw Error(ErrorCode::InvalidArgument, "state has " + std::to_string(f.size()) + " factors, expected " +
                                                std::to_string(epsilon.size()));
  }
  Eigen::VectorXd out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) out[i] = u_of_f(background, f[i], epsilon[static_cast<std::size_t>(i)]);
  return out;
}

TriangleGeom evaluate_face(Background b, const FaceWeights& w, const Eigen::Vector3d& f, bool with_jacobian) {
  return b == Background::Euclidean ? evaluate_e(w, f, with_jacobian) : evaluate_h(w, f, with_jacobian);
}

}  // namespace dcs
