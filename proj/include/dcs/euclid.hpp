#pragma once

#include <optional>

#include <Eigen/Core>

#include "dcs/geometry.hpp"
#include "dcs/weights.hpp"

namespace dcs {

// Face-level functions take corner-indexed triples: r[q] is the radius at corner q
// and lengths[q] is the edge opposite corner q.

// sqrt(eps_i r_i^2 + eps_j r_j^2 + 2 eta r_i r_j) with r = exp(f).
// Throws NonpositiveRadicand when the radicand is not positive.
double edge_length_e(double f_i, double f_j, int eps_i, int eps_j, double eta_ij);

Eigen::Vector3d face_lengths_e(const FaceWeights& w, const Eigen::Vector3d& r);

// Q^E with kappa = 1/r. Positive exactly on nondegenerate input.
double q_value_e(const FaceWeights& w, const Eigen::Vector3d& r);

// Threshold T with V_q = { r_q <= T } for the given r_s, r_t (s = q+1, t = q+2 mod 3),
// or nullopt when corner q has no degenerate region.
std::optional<double> degenerate_interval_e(const FaceWeights& w, int q, double r_s, double r_t);

// Law of cosines. Returns (theta_i, theta_j, theta_k). Throws DegenerateTriangle.
Eigen::Vector3d angles_e(double l_ij, double l_ik, double l_jk);

Eigen::Vector3d extended_angles_e(const FaceWeights& w, const Eigen::Vector3d& r);

// d theta / d u with u = ln r. Throws DegenerateTriangle when Q^E <= 0.
Eigen::Matrix3d jacobian_e(const FaceWeights& w, const Eigen::Vector3d& r);

struct CenterData {
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();         // d(q, s): distance from vertex q to the foot on edge qs
  Eigen::Vector3d h_center = Eigen::Vector3d::Zero();  // signed distance from the center to the edge opposite q
};

// Throws DegenerateTriangle when Q^E <= 0.
CenterData center_data_e(const FaceWeights& w, const Eigen::Vector3d& r);

TriangleGeom evaluate_e(const FaceWeights& w, const Eigen::Vector3d& f, bool with_jacobian);

}  // namespace dcs
