#include "dcs/flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "dcs/curvature.hpp"
#include "dcs/energy.hpp"
#include "dcs/errors.hpp"

namespace dcs {

std::string_view flow_method_name(FlowMethod m) {
  return m == FlowMethod::Rk4 ? "rk4" : "implicit-euler";
}

FlowMethod parse_flow_method(std::string_view text) {
  if (text == "rk4" || text == "explicit-rk4") return FlowMethod::Rk4;
  if (text == "implicit-euler") return FlowMethod::ImplicitEuler;
  throw Error(ErrorCode::InvalidArgument, "unknown flow method '" + std::string(text) + "'");
}

std::string_view flow_status_name(FlowStatus s) {
  switch (s) {
    case FlowStatus::Converged: return "Converged";
    case FlowStatus::TMaxReached: return "TMaxReached";
    case FlowStatus::Diverged: return "Diverged";
    case FlowStatus::DegeneracyHalt: return "DegeneracyHalt";
  }
  return "Unknown";
}

void FlowOptions::validate() const {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(t_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (record_every < 1) throw Error(ErrorCode::InvalidArgument, "record_every must be at least 1");
  if (max_newton_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_newton_iter must be at least 1");
}

namespace {

constexpr double kMaxDu = 0.1;
constexpr double kDtMin = 1e-12;
constexpr int kGrowAfter = 10;
constexpr int kDivergeSteps = 1000;

// One evaluation of the right-hand side at u.
struct Sample {
  bool ok = false;
  Eigen::VectorXd velocity;
  double merit = 0.0;  // quantity that may not increase across an accepted step
  double error = 0.0;  // max |K - K_bar|
};

using Evaluator = std::function<Sample(const Eigen::VectorXd&)>;

void remove_mean(Background b, Eigen::VectorXd& v) {
  // Lambda has kernel (1,...,1) in Euclidean mode; the projection only removes round-off drift.
  if (b == Background::Euclidean) v.array() -= v.mean();
}

struct Integrator {
  const WeightedSurface& ws;
  Background background;
  const Eigen::VectorXd& k_bar;
  const FlowOptions& opts;
  Evaluator eval;

  bool in_domain(const Eigen::VectorXd& u) const { return u_in_domain(background, u, ws.scheme().epsilon); }

  std::optional<Eigen::VectorXd> rk4(const Eigen::VectorXd& u, const Sample& s0, double h) const {
    const Eigen::VectorXd& k1 = s0.velocity;
    const Sample s2 = eval(u + 0.5 * h * k1);
    if (!s2.ok) return std::nullopt;
    const Sample s3 = eval(u + 0.5 * h * s2.velocity);
    if (!s3.ok) return std::nullopt;
    const Sample s4 = eval(u + h * s3.velocity);
    if (!s4.ok) return std::nullopt;
    Eigen::VectorXd du = (h / 6.0) * (k1 + 2.0 * s2.velocity + 2.0 * s3.velocity + s4.velocity);
    remove_mean(background, du);
    return Eigen::VectorXd(u + du);
  }

  // Solves x = u + h (K_bar - K~(x)) by Newton with Jacobian I + h Lambda~.
  std::optional<Eigen::VectorXd> implicit_euler(const Eigen::VectorXd& u, double h) const {
    const std::vector<int>& eps = ws.scheme().epsilon;
    const Eigen::Index n = u.size();
    Eigen::VectorXd x = u;
    for (int it = 0; it <= opts.max_newton_iter; ++it) {
      if (!in_domain(x)) return std::nullopt;
      const SurfaceGeometry geom = evaluate_surface(ws, ConformalState::from_u(background, x, eps), true);
      if (!opts.extended && !geom.degenerate_faces.empty()) {
        throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(geom.degenerate_faces.front()) +
                                                   " degenerated during the ordinary flow");
      }
      Eigen::VectorXd rate = k_bar - geom.curvature;
      remove_mean(background, rate);
      const Eigen::VectorXd residual = x - u - h * rate;
      if (residual.lpNorm<Eigen::Infinity>() <= 1e-13 * std::max({1.0, h, x.lpNorm<Eigen::Infinity>()})) return x;
      if (it == opts.max_newton_iter) break;
      const Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(n, n) + h * geom.lambda;
      Eigen::VectorXd delta = -jac.partialPivLu().solve(residual);
      remove_mean(background, delta);
      x += delta;
    }
    return std::nullopt;
  }

  FlowTrace run(const ConformalState& state0) const {
    const std::vector<int>& eps = ws.scheme().epsilon;
    FlowTrace trace;
    Eigen::VectorXd u = state0.u(eps);
    Sample current = eval(u);
    const double error0 = current.error;
    double t = 0.0;
    double dt = opts.dt;
    int since_growth = 0;
    int above_diverge = 0;
    long since_record = 0;

    auto record = [&]() {
      trace.times.push_back(t);
      trace.states.push_back(u);
      trace.errors.push_back(current.error);
      trace.sum_u.push_back(u.sum());
    };
    record();

    trace.status = FlowStatus::TMaxReached;
    if (current.error < opts.tol) {
      trace.status = FlowStatus::Converged;
    } else {
      while (t < opts.t_max && trace.accepted_steps + trace.rejected_steps < opts.max_steps) {
        const double h = std::min(dt, opts.t_max - t);
        std::optional<Eigen::VectorXd> next =
            opts.method == FlowMethod::Rk4 ? rk4(u, current, h) : implicit_euler(u, h);
        Sample trial;
        bool accept = false;
        if (next && (*next - u).lpNorm<Eigen::Infinity>() <= kMaxDu && in_domain(*next)) {
          trial = eval(*next);
          accept = trial.ok && trial.merit <= current.merit * (1.0 + 1e-9) + 1e-13;
        }
        if (!accept) {
          ++trace.rejected_steps;
          since_growth = 0;
          dt *= 0.5;
          if (dt < kDtMin) {
            trace.status = FlowStatus::DegeneracyHalt;
            break;
          }
          continue;
        }
        ++trace.accepted_steps;
        t += h;
        u = std::move(*next);
        current = std::move(trial);
        if (++since_growth >= kGrowAfter) {
          dt *= 2.0;
          since_growth = 0;
        }
        const bool done = current.error < opts.tol;
        if (++since_record >= opts.record_every || done) {
          record();
          since_record = 0;
        }
        if (done) {
          trace.status = FlowStatus::Converged;
          break;
        }
        above_diverge = current.error > 10.0 * error0 ? above_diverge + 1 : 0;
        if (above_diverge >= kDivergeSteps) {
          trace.status = FlowStatus::Diverged;
          break;
        }
      }
    }
    if (trace.times.back() != t) record();
    trace.final_state = ConformalState::from_u(background, u, eps);
    trace.final_error = current.error;
    return trace;
  }
};

void check_start(const WeightedSurface& ws, const ConformalState& state0, const Eigen::VectorXd& k_bar,
                 const FlowOptions& opts) {
  opts.validate();
  check_target(ws.surface(), k_bar, state0.background);
  if (state0.f.size() != ws.surface().vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "initial state size does not match the surface");
  }
  if (!state0.f.allFinite()) throw Error(ErrorCode::DomainError, "initial factors are not finite");
}

}  // namespace

FlowTrace run_extended_ricci(const WeightedSurface& ws, const ConformalState& state0, const Eigen::VectorXd& k_bar,
                             const FlowOptions& opts) {
  check_start(ws, state0, k_bar, opts);
  const Background b = state0.background;
  const std::vector<int>& eps = ws.scheme().epsilon;
  Evaluator eval = [&](const Eigen::VectorXd& u) {
    Sample s;
    if (!u_in_domain(b, u, eps)) return s;
    const SurfaceGeometry geom = evaluate_surface(ws, ConformalState::from_u(b, u, eps), false);
    if (!opts.extended && !geom.degenerate_faces.empty()) {
      throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(geom.degenerate_faces.front()) +
                                                 " is degenerate; the ordinary flow is undefined there");
    }
    const Eigen::VectorXd gap = geom.curvature - k_bar;
    s.ok = true;
    s.velocity = -gap;
    remove_mean(b, s.velocity);
    s.merit = gap.norm();
    s.error = gap.lpNorm<Eigen::Infinity>();
    return s;
  };
  return Integrator{ws, b, k_bar, opts, eval}.run(state0);
}

FlowTrace run_calabi(const WeightedSurface& ws, const ConformalState& state0, const Eigen::VectorXd& k_bar,
                     const FlowOptions& opts) {
  check_start(ws, state0, k_bar, opts);
  const Background b = state0.background;
  const std::vector<int>& eps = ws.scheme().epsilon;
  {
    const SurfaceGeometry geom0 = evaluate_surface(ws, state0, false);
    if (!geom0.degenerate_faces.empty()) {
      throw Error(ErrorCode::DegenerateStart, "face " + std::to_string(geom0.degenerate_faces.front()) +
                                                  " is degenerate at the initial state");
    }
  }
  Evaluator eval = [&](const Eigen::VectorXd& u) {
    Sample s;
    if (!u_in_domain(b, u, eps)) return s;
    const SurfaceGeometry geom = evaluate_surface(ws, ConformalState::from_u(b, u, eps), true);
    if (!geom.degenerate_faces.empty()) return s;
    const Eigen::VectorXd gap = geom.curvature - k_bar;
    s.ok = true;
    s.velocity = -geom.lambda * gap;
    remove_mean(b, s.velocity);
    s.merit = 0.5 * gap.squaredNorm();
    s.error = gap.lpNorm<Eigen::Infinity>();
    return s;
  };
  FlowOptions explicit_opts = opts;
  explicit_opts.method = FlowMethod::Rk4;
  return Integrator{ws, b, k_bar, explicit_opts, eval}.run(state0);
}

SolveResult newton_solve(const WeightedSurface& ws, const ConformalState& state0, const Eigen::VectorXd& k_bar,
                         const FlowOptions& opts) {
  check_start(ws, state0, k_bar, opts);
  const Background b = state0.background;
  const std::vector<int>& eps = ws.scheme().epsilon;
  const Eigen::Index n = ws.surface().vertex_count();

  Eigen::VectorXd u = state0.u(eps);
  SurfaceGeometry geom = evaluate_surface(ws, state0, true);
  if (!geom.degenerate_faces.empty()) {
    throw Error(ErrorCode::DegenerateStart, "face " + std::to_string(geom.degenerate_faces.front()) +
                                                " is degenerate at the initial state");
  }

  SolveResult result;
  for (;;) {
    const Eigen::VectorXd gap = geom.curvature - k_bar;
    result.error = gap.lpNorm<Eigen::Infinity>();
    if (result.error < opts.tol) {
      result.converged = true;
      break;
    }
    if (result.iterations >= opts.max_newton_iter) break;

    Eigen::MatrixXd system = geom.lambda;
    if (b == Background::Euclidean) system.array() += 1.0 / static_cast<double>(n);
    Eigen::VectorXd delta = system.ldlt().solve(-gap);
    remove_mean(b, delta);

    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 40; ++halving, alpha *= 0.5) {
      const Eigen::VectorXd trial = u + alpha * delta;
      if (!u_in_domain(b, trial, eps)) continue;
      SurfaceGeometry trial_geom = evaluate_surface(ws, ConformalState::from_u(b, trial, eps), true);
      if (!trial_geom.degenerate_faces.empty()) continue;
      if (potential_difference(ws, u, trial, k_bar, b) > 1e-14) continue;
      u = trial;
      geom = std::move(trial_geom);
      accepted = true;
      break;
    }
    if (!accepted) {
      throw Error(ErrorCode::LineSearchStall, "no acceptable Newton step after 40 halvings at max |K - K_bar| = " +
                                                  std::to_string(result.error) +
                                                  "; try the extended Ricci flow instead");
    }
    ++result.iterations;
  }
  result.state = ConformalState::from_u(b, u, eps);
  return result;
}

}  // namespace dcs
