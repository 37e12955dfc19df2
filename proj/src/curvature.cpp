#include "dcs/curvature.hpp"

#include <numbers>
#include <string>

#include "dcs/errors.hpp"

namespace dcs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_size(const WeightedSurface& ws, const ConformalState& state) {
  if (state.f.size() != ws.surface().vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "state has " + std::to_string(state.f.size()) + " factors for " +
                                                std::to_string(ws.surface().vertex_count()) + " vertices");
  }
}

}  // namespace

Eigen::Vector3d face_factors(const TriangulatedSurface& surface, const Eigen::VectorXd& f, int face) {
  const Face& t = surface.face(face);
  return {f[t[0]], f[t[1]], f[t[2]]};
}

SurfaceGeometry evaluate_surface(const WeightedSurface& ws, const ConformalState& state, bool with_jacobian) {
  check_size(ws, state);
  const TriangulatedSurface& surface = ws.surface();
  const int n = surface.vertex_count();
  SurfaceGeometry out;
  out.faces.reserve(static_cast<std::size_t>(surface.face_count()));
  out.curvature = Eigen::VectorXd::Constant(n, kTwoPi);
  if (with_jacobian) out.lambda = Eigen::MatrixXd::Zero(n, n);

  // Fixed face order keeps the accumulation bit-reproducible.
  for (int fi = 0; fi < surface.face_count(); ++fi) {
    TriangleGeom g = evaluate_face(state.background, ws.face_weights(fi), face_factors(surface, state.f, fi),
                                   with_jacobian);
    const Face& t = surface.face(fi);
    for (int q = 0; q < 3; ++q) out.curvature[t[static_cast<std::size_t>(q)]] -= g.angles[q];
    if (g.degenerate) {
      out.degenerate_faces.push_back(fi);
    } else if (with_jacobian) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) out.lambda(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)]) -= g.jacobian(a, b);
      }
    }
    out.faces.push_back(std::move(g));
  }
  return out;
}

CurvatureField vertex_curvature(const WeightedSurface& ws, const ConformalState& state, bool extended) {
  SurfaceGeometry geom = evaluate_surface(ws, state, false);
  if (!extended && !geom.degenerate_faces.empty()) {
    const int fi = geom.degenerate_faces.front();
    throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(fi) + " has Q = " +
                                               std::to_string(geom.faces[static_cast<std::size_t>(fi)].q_value));
  }
  CurvatureField field;
  field.values = std::move(geom.curvature);
  field.extended = !geom.degenerate_faces.empty();
  field.degenerate_faces = std::move(geom.degenerate_faces);
  return field;
}

double gauss_bonnet_residual(const CurvatureField& field, const TriangulatedSurface& surface) {
  return field.values.sum() - kTwoPi * surface.euler_characteristic();
}

double total_area(const WeightedSurface& ws, const ConformalState& state) {
  const SurfaceGeometry geom = evaluate_surface(ws, state, false);
  double area = 0.0;
  for (const TriangleGeom& g : geom.faces) {
    if (g.degenerate) continue;
    area += state.background == Background::Euclidean ? 0.5 * g.area_term : std::numbers::pi - g.angles.sum();
  }
  return area;
}

Eigen::MatrixXd curvature_jacobian(const WeightedSurface& ws, const ConformalState& state, bool extended) {
  if (extended) {
    throw Error(ErrorCode::ExtendedNotDifferentiable, "the extended curvature has no Jacobian");
  }
  SurfaceGeometry geom = evaluate_surface(ws, state, true);
  if (!geom.degenerate_faces.empty()) {
    throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(geom.degenerate_faces.front()) + " is degenerate");
  }
  return std::move(geom.lambda);
}

}  // namespace dcs
