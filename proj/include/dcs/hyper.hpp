#pragma once

#include <optional>

#include <Eigen/Core>

#include "dcs/geometry.hpp"
#include "dcs/weights.hpp"

namespace dcs {

// eps = 0: u = f. eps = 1: u = -asinh(exp(-f)), a bijection onto (-inf, 0).
double u_of_f_h(double f, int eps);
// Throws DomainError when eps = 1 and u >= 0.
double f_of_u_h(double u, int eps);

// cosh l = C_i C_j + eta S_i S_j. Throws ArgumentNotAboveOne when the argument is not above 1.
double edge_length_h(double f_i, double f_j, int eps_i, int eps_j, double eta_ij);

// cosh of the edge opposite each corner.
Eigen::Vector3d face_cosh_lengths_h(const FaceWeights& w, const Eigen::Vector3d& f);

// Q^H = (Euclidean-form quadratic in kappa = C/S) + G.
double q_value_h(const FaceWeights& w, const Eigen::Vector3d& f);

// Threshold T with V_q = { f_q <= T } for the given f_s, f_t, or nullopt when A_q <= 0.
// Throws NoRealThreshold when the kappa threshold squared does not exceed eps_q.
std::optional<double> degenerate_interval_h(const FaceWeights& w, int q, double f_s, double f_t);

// Hyperbolic law of cosines from (cosh l_ij, cosh l_ik, cosh l_jk). Throws DegenerateTriangle.
Eigen::Vector3d angles_h(double cosh_ij, double cosh_ik, double cosh_jk);

Eigen::Vector3d extended_angles_h(const FaceWeights& w, const Eigen::Vector3d& f);

// d theta / d u. Throws DegenerateTriangle when Q^H <= 0.
Eigen::Matrix3d jacobian_h(const FaceWeights& w, const Eigen::Vector3d& f);

// Area of a hyperbolic triangle from its side lengths (tangent quarter-area formula).
double triangle_area_h(double l_ij, double l_ik, double l_jk);

// Constants with lambda (C_i C_j + S_i S_j) <= cosh l_ij <= mu (C_i C_j + S_i S_j)
// for an edge with eps_i = 1. Throws InvalidArgument when eps_j + eta <= 0.
struct LengthBounds {
  double lambda = 0.0;
  double mu = 0.0;
};
LengthBounds length_bounds_h(int eps_j, double eta_ij);

TriangleGeom evaluate_h(const FaceWeights& w, const Eigen::Vector3d& f, bool with_jacobian);

}  // namespace dcs
