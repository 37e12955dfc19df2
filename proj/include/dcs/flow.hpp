#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dcs/geometry.hpp"
#include "dcs/weights.hpp"

namespace dcs {

enum class FlowMethod { Rk4, ImplicitEuler };
enum class FlowStatus { Converged, TMaxReached, Diverged, DegeneracyHalt };

std::string_view flow_method_name(FlowMethod m);
// "rk4"/"explicit-rk4" or "implicit-euler"; throws InvalidArgument otherwise.
FlowMethod parse_flow_method(std::string_view text);
std::string_view flow_status_name(FlowStatus s);

struct FlowOptions {
  double dt = 0.01;
  double t_max = 1000.0;
  double tol = 1e-9;  // on max |K - K_bar|
  FlowMethod method = FlowMethod::Rk4;
  int max_newton_iter = 50;
  int record_every = 1;
  // Ricci flow only: false runs the ordinary flow, which throws DegenerateFace on degeneracy.
  bool extended = true;
  long max_steps = 50'000'000;

  // Throws InvalidArgument on nonpositive dt, tol, t_max or record_every.
  void validate() const;
};

struct FlowTrace {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;  // u at each recorded sample
  std::vector<double> errors;           // max |K - K_bar| at each sample
  std::vector<double> sum_u;
  FlowStatus status = FlowStatus::TMaxReached;
  long accepted_steps = 0;
  long rejected_steps = 0;
  ConformalState final_state;
  double final_error = 0.0;
};

// du/dt = K_bar - K~ with extended curvature. Throws BadTarget or DomainError
// (and DegenerateFace when opts.extended is false).
FlowTrace run_extended_ricci(const WeightedSurface& ws, const ConformalState& state0, const Eigen::VectorXd& k_bar,
                             const FlowOptions& opts);

// du/dt = -Lambda (K - K_bar). Throws BadTarget or DegenerateStart.
FlowTrace run_calabi(const WeightedSurface& ws, const ConformalState& state0, const Eigen::VectorXd& k_bar,
                     const FlowOptions& opts);

struct SolveResult {
  ConformalState state;
  int iterations = 0;
  double error = 0.0;
  bool converged = false;
};

// Damped Newton on the target potential. Throws BadTarget, DegenerateStart or LineSearchStall.
SolveResult newton_solve(const WeightedSurface& ws, const ConformalState& state0, const Eigen::VectorXd& k_bar,
                         const FlowOptions& opts);

}  // namespace dcs
