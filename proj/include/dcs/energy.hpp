#pragma once

#include <functional>

#include <Eigen/Core>

#include "dcs/geometry.hpp"
#include "dcs/weights.hpp"

namespace dcs {

struct QuadratureInfo {
  int nodes = 16;     // Gauss-Legendre nodes per segment
  int segments = 0;   // accepted leaf segments
  int max_depth = 0;  // deepest bisection level reached
};

struct EnergyReport {
  double value = 0.0;
  Eigen::VectorXd base_point;  // u used as the integration origin
  QuadratureInfo quadrature;
};

// Composite 16-node Gauss-Legendre on [a, b], bisecting until two successive
// refinements differ by less than tol.
double integrate_adaptive(const std::function<double(double)>& g, double a, double b, double tol = 1e-10,
                          QuadratureInfo* info = nullptr);

// Line integral of theta . du along the straight segment u_base -> u_target.
// Throws PathLeavesAdmissible (extended = false) or DomainError (hyperbolic u outside its domain).
double triangle_energy(const FaceWeights& w, const Eigen::Vector3d& u_target, const Eigen::Vector3d& u_base,
                       Background b, bool extended, QuadratureInfo* info = nullptr);

// Global integration origin: 0 in Euclidean mode; -1 at eps = 1 vertices and 0 elsewhere in
// hyperbolic mode, shifted along the diagonal when that point has a degenerate face.
Eigen::VectorXd energy_base_point(const WeightedSurface& ws, Background b);

// 2 pi sum(u) - sum over faces of the triangle energies from the base point.
EnergyReport ricci_energy_report(const WeightedSurface& ws, const Eigen::VectorXd& u, Background b, bool extended);
double ricci_energy(const WeightedSurface& ws, const Eigen::VectorXd& u, Background b, bool extended);

// Throws BadTarget unless K_bar is feasible for the background.
void check_target(const TriangulatedSurface& surface, const Eigen::VectorXd& k_bar, Background b);

// Ricci energy minus K_bar . u; gradient K - K_bar.
double target_potential(const WeightedSurface& ws, const Eigen::VectorXd& u, const Eigen::VectorXd& k_bar,
                        Background b, bool extended);

// Extended potential difference H(u1) - H(u0), integrated along the segment between them.
double potential_difference(const WeightedSurface& ws, const Eigen::VectorXd& u0, const Eigen::VectorXd& u1,
                            const Eigen::VectorXd& k_bar, Background b);

// 0.5 |K_bar - K|^2. Throws DegenerateFace.
double calabi_energy(const WeightedSurface& ws, const Eigen::VectorXd& u, const Eigen::VectorXd& k_bar, Background b);
// -Lambda (K_bar - K).
Eigen::VectorXd calabi_gradient(const WeightedSurface& ws, const Eigen::VectorXd& u, const Eigen::VectorXd& k_bar,
                                Background b);

}  // namespace dcs
