#include "dcs/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dcs/errors.hpp"

namespace dcs {

double FaceWeights::gamma(int q) const {
  const int s = (q + 1) % 3;
  const int t = (q + 2) % 3;
  return eps[static_cast<std::size_t>(q)] * eta[static_cast<std::size_t>(q)] +
         eta[static_cast<std::size_t>(s)] * eta[static_cast<std::size_t>(t)];
}

double FaceWeights::a_coeff(int q) const {
  const int s = (q + 1) % 3;
  const int t = (q + 2) % 3;
  const double e = eta[static_cast<std::size_t>(q)];
  return e * e - eps[static_cast<std::size_t>(s)] * eps[static_cast<std::size_t>(t)];
}

double FaceWeights::g_term() const {
  return eps[0] * eta[0] * eta[0] + eps[1] * eta[1] * eta[1] + eps[2] * eta[2] * eta[2] +
         2.0 * eta[0] * eta[1] * eta[2] - eps[0] * eps[1] * eps[2];
}

double CornerQuadratic::upper_root() const {
  const double sq = std::sqrt(std::max(discriminant(), 0.0));
  return (-b + sq) / (2.0 * a);
}

CornerQuadratic corner_quadratic(const FaceWeights& w, int q, double kappa_s, double kappa_t, double g) {
  const int s = (q + 1) % 3;
  const int t = (q + 2) % 3;
  const auto eps = [&](int k) { return static_cast<double>(w.eps[static_cast<std::size_t>(k)]); };
  const auto eta = [&](int k) { return w.eta[static_cast<std::size_t>(k)]; };
  CornerQuadratic out;
  out.a = w.a_coeff(q);
  out.b = -2.0 * (w.gamma(t) * kappa_s + w.gamma(s) * kappa_t);
  // eta[s] is eta_qt, eta[t] is eta_qs.
  out.c = (eta(s) * eta(s) - eps(q) * eps(t)) * kappa_s * kappa_s +
          (eta(t) * eta(t) - eps(q) * eps(s)) * kappa_t * kappa_t - 2.0 * w.gamma(q) * kappa_s * kappa_t - g;
  return out;
}

Eigen::Vector3d h_values_unchecked(const Eigen::Vector3d& kappa, const FaceWeights& w) {
  Eigen::Vector3d h;
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3;
    const int t = (q + 2) % 3;
    h[q] = -w.a_coeff(q) * kappa[q] + kappa[s] * w.gamma(t) + kappa[t] * w.gamma(s);
  }
  return h;
}

Eigen::Vector3d h_values(const Eigen::Vector3d& kappa, const FaceWeights& w) {
  for (int q = 0; q < 3; ++q) {
    if (!(kappa[q] > 0.0)) {
      throw Error(ErrorCode::NonpositiveKappa, "kappa[" + std::to_string(q) + "] = " + std::to_string(kappa[q]));
    }
  }
  return h_values_unchecked(kappa, w);
}

WeightScheme WeightScheme::uniform(const TriangulatedSurface& surface, int epsilon, double eta_value) {
  WeightScheme scheme;
  scheme.epsilon.assign(static_cast<std::size_t>(surface.vertex_count()), epsilon);
  for (const EdgeKey& e : surface.edges()) scheme.eta[e] = eta_value;
  return scheme;
}

std::string ConditionViolation::describe() const {
  std::ostringstream os;
  if (kind == Kind::C1) {
    os << "C1 violated on edge {" << edge.a << "," << edge.b << "}: eps_s*eps_t + eta_st = " << value << " <= 0";
  } else {
    os << "C2 violated on face " << face << " at corner " << corner_vertex << " (opposite edge {" << edge.a << ","
       << edge.b << "}): eps_q*eta_st + eta_qs*eta_qt = " << value << " < 0";
  }
  return os.str();
}

namespace {

void check_coverage(const TriangulatedSurface& surface, const WeightScheme& scheme) {
  if (scheme.epsilon.size() != static_cast<std::size_t>(surface.vertex_count())) {
    throw Error(ErrorCode::MissingWeight, "epsilon covers " + std::to_string(scheme.epsilon.size()) + " of " +
                                              std::to_string(surface.vertex_count()) + " vertices");
  }
  for (std::size_t v = 0; v < scheme.epsilon.size(); ++v) {
    if (scheme.epsilon[v] != 0 && scheme.epsilon[v] != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "epsilon at vertex " + std::to_string(v) + " is " + std::to_string(scheme.epsilon[v]) +
                      "; only 0 and 1 are supported");
    }
  }
  for (std::size_t e = 0; e < surface.edges().size(); ++e) {
    const EdgeKey& key = surface.edges()[e];
    if (!scheme.eta.contains(key)) {
      throw Error(ErrorCode::MissingWeight, "no eta on edge " + std::to_string(e) + " {" + std::to_string(key.a) +
                                                "," + std::to_string(key.b) + "}");
    }
  }
}

FaceWeights pack_face(const TriangulatedSurface& surface, const WeightScheme& scheme, int f) {
  const Face& t = surface.face(f);
  FaceWeights w;
  for (int q = 0; q < 3; ++q) {
    w.eps[static_cast<std::size_t>(q)] = scheme.epsilon.at(static_cast<std::size_t>(t[static_cast<std::size_t>(q)]));
    const int s = t[static_cast<std::size_t>((q + 1) % 3)];
    const int u = t[static_cast<std::size_t>((q + 2) % 3)];
    auto it = scheme.eta.find(EdgeKey(s, u));
    if (it == scheme.eta.end()) {
      throw Error(ErrorCode::MissingWeight, "no eta on edge {" + std::to_string(s) + "," + std::to_string(u) + "}");
    }
    w.eta[static_cast<std::size_t>(q)] = it->second;
  }
  return w;
}

}  // namespace

WeightedSurface::WeightedSurface(TriangulatedSurface surface, WeightScheme scheme)
    : surface_(std::move(surface)), scheme_(std::move(scheme)) {
  check_coverage(surface_, scheme_);
  face_weights_.reserve(static_cast<std::size_t>(surface_.face_count()));
  for (int f = 0; f < surface_.face_count(); ++f) face_weights_.push_back(pack_face(surface_, scheme_, f));
}

double WeightedSurface::eta(int i, int j) const {
  auto it = scheme_.eta.find(EdgeKey(i, j));
  if (it == scheme_.eta.end()) {
    throw Error(ErrorCode::MissingWeight, "no eta on {" + std::to_string(i) + "," + std::to_string(j) + "}");
  }
  return it->second;
}

FaceWeights face_weights(const TriangulatedSurface& surface, const WeightScheme& scheme, int f) {
  return pack_face(surface, scheme, f);
}

ConditionReport validate_scheme(const TriangulatedSurface& surface, const WeightScheme& scheme) {
  check_coverage(surface, scheme);
  ConditionReport report;
  for (const EdgeKey& e : surface.edges()) {
    const double value = scheme.epsilon[static_cast<std::size_t>(e.a)] * scheme.epsilon[static_cast<std::size_t>(e.b)] +
                         scheme.eta.at(e);
    if (!(value > 0.0)) report.violations.push_back({ConditionViolation::Kind::C1, e, -1, -1, value});
  }
  for (int f = 0; f < surface.face_count(); ++f) {
    const FaceWeights w = pack_face(surface, scheme, f);
    const Face& t = surface.face(f);
    for (int q = 0; q < 3; ++q) {
      const double value = w.gamma(q);
      if (value < 0.0) {
        EdgeKey opposite(t[static_cast<std::size_t>((q + 1) % 3)], t[static_cast<std::size_t>((q + 2) % 3)]);
        report.violations.push_back({ConditionViolation::Kind::C2, opposite, f, t[static_cast<std::size_t>(q)], value});
      }
    }
  }
  return report;
}

double corner_gamma(const TriangulatedSurface& surface, const WeightScheme& scheme, int f, int corner) {
  const int q = surface.corner_of(f, corner);
  if (q < 0) {
    throw Error(ErrorCode::CornerNotInFace,
                "vertex " + std::to_string(corner) + " is not a corner of face " + std::to_string(f));
  }
  return pack_face(surface, scheme, f).gamma(q);
}

}  // namespace dcs
