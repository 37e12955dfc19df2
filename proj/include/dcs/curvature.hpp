#pragma once

#include <vector>

#include <Eigen/Core>

#include "dcs/geometry.hpp"
#include "dcs/weights.hpp"

namespace dcs {

struct CurvatureField {
  Eigen::VectorXd values;
  bool extended = false;              // true when some face contributed extended angles
  std::vector<int> degenerate_faces;  // faces with Q <= 0 at the evaluated state
};

// Everything the flows need from one pass over the faces.
struct SurfaceGeometry {
  std::vector<TriangleGeom> faces;
  Eigen::VectorXd curvature;  // extended curvature (ordinary where every face is nondegenerate)
  std::vector<int> degenerate_faces;
  // -sum of face Jacobians over nondegenerate faces; empty unless requested.
  Eigen::MatrixXd lambda;
};

// Factors at the three corners of face f.
Eigen::Vector3d face_factors(const TriangulatedSurface& surface, const Eigen::VectorXd& f, int face);

// Throws InvalidArgument when the state size does not match the surface.
SurfaceGeometry evaluate_surface(const WeightedSurface& ws, const ConformalState& state, bool with_jacobian);

// Throws DegenerateFace (naming the first such face) when extended is false and some Q <= 0.
CurvatureField vertex_curvature(const WeightedSurface& ws, const ConformalState& state, bool extended);

// sum K - 2 pi chi. Zero in Euclidean mode; total area in hyperbolic mode.
double gauss_bonnet_residual(const CurvatureField& field, const TriangulatedSurface& surface);

// Sum of face areas: A/2 per Euclidean face, pi - sum(theta) per hyperbolic face.
double total_area(const WeightedSurface& ws, const ConformalState& state);

// Lambda = dK/du, dense N x N. Throws DegenerateFace, or ExtendedNotDifferentiable
// when extended is requested.
Eigen::MatrixXd curvature_jacobian(const WeightedSurface& ws, const ConformalState& state, bool extended = false);

}  // namespace dcs
