#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dcs/geometry.hpp"
#include "dcs/surface.hpp"
#include "dcs/weights.hpp"

namespace dcs {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Invariant battery on one instance: structure conditions, face Jacobians against finite
// differences and their definiteness, Gauss-Bonnet, global Lambda, energy path independence,
// degenerate-region scans and the h-sign law.
std::vector<CheckResult> verify_instance(const std::string& label, const TriangulatedSurface& surface,
                                         const WeightScheme& scheme, const ConformalState& state, std::uint64_t seed);

// Fixed closed-form instances plus randomized ones drawn from `seed`.
std::vector<CheckResult> verify_builtin(std::uint64_t seed);

// Random admissible per-face weights (C1 and C2 hold); eta may be negative.
FaceWeights random_face_weights(std::mt19937_64& rng);

}  // namespace dcs
