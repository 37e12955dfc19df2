#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dcs/surface.hpp"

namespace dcs {

// Weights restricted to one face, in corner order (i, j, k) = (0, 1, 2).
// eta[q] lives on the edge opposite corner q, so eta = (eta_jk, eta_ik, eta_ij).
struct FaceWeights {
  std::array<int, 3> eps{1, 1, 1};
  std::array<double, 3> eta{1.0, 1.0, 1.0};

  static FaceWeights uniform(int epsilon, double eta_value) {
    return {{epsilon, epsilon, epsilon}, {eta_value, eta_value, eta_value}};
  }

  // Weight on the edge joining corners a and b (a != b).
  double eta_between(int a, int b) const { return eta[static_cast<std::size_t>(3 - a - b)]; }

  // gamma_q = eps_q * eta_st + eta_qs * eta_qt; nonnegative under condition C2.
  double gamma(int q) const;
  // A_q = eta_st^2 - eps_s * eps_t; a degenerate region at corner q exists iff A_q > 0.
  double a_coeff(int q) const;
  // G = sum_q eps_q eta_st^2 + 2 eta_ij eta_ik eta_jk - eps_i eps_j eps_k.
  double g_term() const;
};

// -Q viewed as a quadratic A k^2 + B k + C in kappa_q with kappa_s, kappa_t fixed.
// g is subtracted from C (pass 0 for the Euclidean background, G for the hyperbolic one).
struct CornerQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double discriminant() const { return b * b - 4.0 * a * c; }
  // Larger root (-B + sqrt(Delta)) / (2A); meaningful only when a > 0.
  double upper_root() const;
};

CornerQuadratic corner_quadratic(const FaceWeights& w, int q, double kappa_s, double kappa_t, double g);

// Per-corner h values from kappa (1/r in Euclidean, C/S in hyperbolic background).
// Throws NonpositiveKappa when some component is not positive.
Eigen::Vector3d h_values(const Eigen::Vector3d& kappa, const FaceWeights& w);

// Unchecked variant for inner loops.
Eigen::Vector3d h_values_unchecked(const Eigen::Vector3d& kappa, const FaceWeights& w);

// User-level weights: epsilon per vertex (default 1) and eta keyed by unordered edge.
struct WeightScheme {
  std::vector<int> epsilon;
  std::map<EdgeKey, double> eta;

  static WeightScheme uniform(const TriangulatedSurface& surface, int epsilon, double eta_value);

  void set_eta(int i, int j, double value) { eta[EdgeKey(i, j)] = value; }
};

struct ConditionViolation {
  enum class Kind { C1, C2 };
  Kind kind = Kind::C1;
  EdgeKey edge;           // C1: offending edge; C2: edge {s,t} opposite the corner
  int face = -1;          // C2 only
  int corner_vertex = -1; // C2 only: vertex q
  double value = 0.0;     // eps_s eps_t + eta_st (C1) or eps_q eta_st + eta_qs eta_qt (C2)

  std::string describe() const;
};

struct ConditionReport {
  std::vector<ConditionViolation> violations;
  bool admissible() const { return violations.empty(); }
};

// Scheme bound to a surface with a cached per-face weight table.
class WeightedSurface {
 public:
  // Throws MissingWeight when an edge has no eta or epsilon does not cover every vertex,
  // InvalidArgument when some epsilon is outside {0, 1}.
  WeightedSurface(TriangulatedSurface surface, WeightScheme scheme);

  const TriangulatedSurface& surface() const { return surface_; }
  const WeightScheme& scheme() const { return scheme_; }
  const FaceWeights& face_weights(int f) const { return face_weights_.at(static_cast<std::size_t>(f)); }
  int epsilon(int v) const { return scheme_.epsilon.at(static_cast<std::size_t>(v)); }
  double eta(int i, int j) const;

 private:
  TriangulatedSurface surface_;
  WeightScheme scheme_;
  std::vector<FaceWeights> face_weights_;
};

// Throws MissingWeight for coverage problems; otherwise lists every C1/C2 violation.
// C2 is checked exactly, without tolerance.
ConditionReport validate_scheme(const TriangulatedSurface& surface, const WeightScheme& scheme);

FaceWeights face_weights(const TriangulatedSurface& surface, const WeightScheme& scheme, int f);

// gamma at vertex `corner` of face f. Throws CornerNotInFace.
double corner_gamma(const TriangulatedSurface& surface, const WeightScheme& scheme, int f, int corner);

}  // namespace dcs
