// dcs: command-line front end for the discrete conformal structure library.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcs/curvature.hpp"
#include "dcs/errors.hpp"
#include "dcs/flow.hpp"
#include "dcs/io.hpp"
#include "dcs/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct RunConfig {
  std::string mesh;
  std::string weights;
  std::string factors;
  std::string background = "euclidean";
  std::string target;
  double dt = 0.01;
  double t_max = 1000.0;
  double tol = 1e-9;
  std::string method = "rk4";
  std::string out;
  std::uint64_t seed = 1;
};

// Input or configuration problems map to exit code 1; everything else is a runtime failure.
int exit_code_for(const dcs::Error& e) {
  using dcs::ErrorCode;
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::BadIndex:
    case ErrorCode::DegenerateFace:
    case ErrorCode::NonManifoldEdge:
    case ErrorCode::Disconnected:
    case ErrorCode::MissingWeight:
    case ErrorCode::BadTarget:
    case ErrorCode::DegenerateStart:
    case ErrorCode::DomainError:
    case ErrorCode::ParseError:
      return kExitValidation;
    default:
      return kExitRuntime;
  }
}

std::string g12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Instance {
  dcs::TriangulatedSurface surface;
  dcs::WeightScheme scheme;
  dcs::Background background;
  dcs::ConformalState state;
};

Instance load(const RunConfig& cfg) {
  if (cfg.mesh.empty()) throw dcs::Error(dcs::ErrorCode::InvalidArgument, "--mesh is required");
  if (cfg.weights.empty()) throw dcs::Error(dcs::ErrorCode::InvalidArgument, "--weights is required");
  const dcs::Background b = dcs::parse_background(cfg.background);
  dcs::TriangulatedSurface surface = dcs::read_mesh(cfg.mesh);
  dcs::WeightScheme scheme = dcs::read_weights(cfg.weights, surface);
  dcs::ConformalState state = cfg.factors.empty()
                                  ? dcs::ConformalState{b, Eigen::VectorXd::Zero(surface.vertex_count())}
                                  : dcs::read_factors(cfg.factors, surface, b);
  return {std::move(surface), std::move(scheme), b, std::move(state)};
}

// Exits through MissingWeight when coverage is incomplete; returns false on C1/C2 violations.
bool report_conditions(const Instance& in) {
  const dcs::ConditionReport report = dcs::validate_scheme(in.surface, in.scheme);
  if (report.admissible()) {
    std::cout << "structure conditions: ok\n";
    return true;
  }
  std::cout << "structure conditions: " << report.violations.size() << " violation(s)\n";
  for (const auto& v : report.violations) std::cout << "  " << v.describe() << '\n';
  return false;
}

dcs::FlowOptions flow_options(const RunConfig& cfg) {
  dcs::FlowOptions opts;
  opts.dt = cfg.dt;
  opts.t_max = cfg.t_max;
  opts.tol = cfg.tol;
  opts.validate();
  return opts;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dcs::Error(dcs::ErrorCode::IoError, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw dcs::Error(dcs::ErrorCode::IoError, "failed writing '" + path + "'");
}

nlohmann::ordered_json factors_json(const dcs::ConformalState& state) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < state.f.size(); ++i) arr.push_back(state.f[i]);
  return arr;
}

int cmd_check(const RunConfig& cfg) {
  const Instance in = load(cfg);
  std::cout << "surface: " << in.surface.vertex_count() << " vertices, " << in.surface.edge_count() << " edges, "
            << in.surface.face_count() << " faces, chi = " << in.surface.euler_characteristic() << '\n';
  const bool admissible = report_conditions(in);
  const dcs::WeightedSurface ws(in.surface, in.scheme);
  const dcs::SurfaceGeometry geom = dcs::evaluate_surface(ws, in.state, false);
  const int nondegenerate = in.surface.face_count() - static_cast<int>(geom.degenerate_faces.size());
  std::cout << "background: " << dcs::background_name(in.background) << '\n';
  std::cout << nondegenerate << " faces nondegenerate\n";
  for (int fi : geom.degenerate_faces) {
    const dcs::Face& t = in.surface.face(fi);
    const dcs::TriangleGeom& g = geom.faces[static_cast<std::size_t>(fi)];
    std::cout << "degenerate face " << fi << " (" << t[0] << "," << t[1] << "," << t[2] << "): Q = " << g12(g.q_value)
              << ", vertex " << t[static_cast<std::size_t>(g.degenerate_corner)] << " lies in its degenerate region\n";
  }
  return admissible && geom.degenerate_faces.empty() ? kExitOk : kExitValidation;
}

int cmd_geom(const RunConfig& cfg) {
  const Instance in = load(cfg);
  const dcs::WeightedSurface ws(in.surface, in.scheme);
  const dcs::SurfaceGeometry geom = dcs::evaluate_surface(ws, in.state, true);
  const bool hyperbolic = in.background == dcs::Background::Hyperbolic;
  auto triple = [](const Eigen::Vector3d& v) { return g12(v[0]) + " " + g12(v[1]) + " " + g12(v[2]); };
  for (int fi = 0; fi < in.surface.face_count(); ++fi) {
    const dcs::Face& t = in.surface.face(fi);
    const dcs::TriangleGeom& g = geom.faces[static_cast<std::size_t>(fi)];
    std::cout << "face " << fi << " (" << t[0] << "," << t[1] << "," << t[2] << ")\n";
    std::cout << "  lengths " << triple(g.lengths) << '\n';
    if (hyperbolic) std::cout << "  cosh_lengths " << triple(g.cosh_lengths) << '\n';
    std::cout << "  Q " << g12(g.q_value) << '\n';
    std::cout << "  h " << triple(g.h) << '\n';
    std::cout << "  degenerate " << (g.degenerate ? "yes" : "no") << '\n';
    std::cout << "  angles " << triple(g.angles) << '\n';
    if (g.has_jacobian) {
      for (int r = 0; r < 3; ++r) std::cout << "  jacobian " << triple(g.jacobian.row(r).transpose()) << '\n';
    }
  }
  std::cout << "curvature";
  for (Eigen::Index i = 0; i < geom.curvature.size(); ++i) std::cout << ' ' << g12(geom.curvature[i]);
  std::cout << '\n';
  return kExitOk;
}

int cmd_flow(const RunConfig& cfg) {
  const Instance in = load(cfg);
  if (!report_conditions(in)) return kExitValidation;
  if (cfg.target.empty()) throw dcs::Error(dcs::ErrorCode::InvalidArgument, "--target is required");
  const dcs::WeightedSurface ws(in.surface, in.scheme);
  const Eigen::VectorXd k_bar = dcs::resolve_target(cfg.target, in.surface, in.background);
  dcs::FlowOptions opts = flow_options(cfg);
  const bool calabi = cfg.method == "calabi";
  if (!calabi) opts.method = dcs::parse_flow_method(cfg.method);

  const auto start = std::chrono::steady_clock::now();
  const dcs::FlowTrace trace = calabi ? dcs::run_calabi(ws, in.state, k_bar, opts)
                                      : dcs::run_extended_ricci(ws, in.state, k_bar, opts);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::ordered_json summary;
  summary["status"] = std::string(dcs::flow_status_name(trace.status));
  summary["iterations"] = trace.accepted_steps;
  summary["rejected_steps"] = trace.rejected_steps;
  summary["final_error"] = trace.final_error;
  summary["t_final"] = trace.times.back();
  summary["method"] = cfg.method;
  summary["background"] = std::string(dcs::background_name(in.background));
  summary["final_f"] = factors_json(trace.final_state);
  summary["wall_time"] = wall;

  std::cout << "status " << summary["status"].get<std::string>() << '\n';
  std::cout << "steps " << trace.accepted_steps << " accepted, " << trace.rejected_steps << " rejected\n";
  std::cout << "t " << g12(trace.times.back()) << '\n';
  std::cout << "final_error " << g12(trace.final_error) << '\n';
  std::cout << "final_f";
  for (Eigen::Index i = 0; i < trace.final_state.f.size(); ++i) std::cout << ' ' << g12(trace.final_state.f[i]);
  std::cout << '\n';

  if (!cfg.out.empty()) {
    std::ostringstream csv;
    dcs::write_trace_csv(csv, trace);
    write_file(cfg.out + ".csv", csv.str());
    write_file(cfg.out + ".json", summary.dump(2) + "\n");
  }
  return trace.status == dcs::FlowStatus::Converged ? kExitOk : kExitRuntime;
}

int cmd_solve(const RunConfig& cfg) {
  const Instance in = load(cfg);
  if (!report_conditions(in)) return kExitValidation;
  if (cfg.target.empty()) throw dcs::Error(dcs::ErrorCode::InvalidArgument, "--target is required");
  const dcs::WeightedSurface ws(in.surface, in.scheme);
  const Eigen::VectorXd k_bar = dcs::resolve_target(cfg.target, in.surface, in.background);
  const dcs::FlowOptions opts = flow_options(cfg);

  const auto start = std::chrono::steady_clock::now();
  const dcs::SolveResult result = dcs::newton_solve(ws, in.state, k_bar, opts);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::ordered_json summary;
  summary["status"] = result.converged ? "Converged" : "NotConverged";
  summary["iterations"] = result.iterations;
  summary["final_error"] = result.error;
  summary["background"] = std::string(dcs::background_name(in.background));
  summary["final_f"] = factors_json(result.state);
  summary["wall_time"] = wall;

  std::cout << "status " << summary["status"].get<std::string>() << '\n';
  std::cout << "iterations " << result.iterations << '\n';
  std::cout << "final_error " << g12(result.error) << '\n';
  std::cout << "final_f";
  for (Eigen::Index i = 0; i < result.state.f.size(); ++i) std::cout << ' ' << g12(result.state.f[i]);
  std::cout << '\n';

  if (!cfg.out.empty()) {
    std::ostringstream factors;
    dcs::write_factors(factors, result.state);
    write_file(cfg.out + ".factors", factors.str());
    write_file(cfg.out + ".json", summary.dump(2) + "\n");
  }
  return result.converged ? kExitOk : kExitRuntime;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<dcs::CheckResult> results;
  if (!cfg.mesh.empty()) {
    const Instance in = load(cfg);
    results = dcs::verify_instance("input", in.surface, in.scheme, in.state, cfg.seed);
  }
  std::vector<dcs::CheckResult> builtin = dcs::verify_builtin(cfg.seed);
  results.insert(results.end(), builtin.begin(), builtin.end());
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    if (!r.pass) ++failed;
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitValidation;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--mesh", cfg.mesh, "mesh file");
  cmd->add_option("--weights", cfg.weights, "weights file");
  cmd->add_option("--factors", cfg.factors, "factors file (default f = 0)");
  cmd->add_option("--background", cfg.background, "euclidean or hyperbolic")->capture_default_str();
}

void add_flow_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--target", cfg.target, "target file, 'constant' or 'constant:<K>'");
  cmd->add_option("--dt", cfg.dt, "initial time step")->capture_default_str();
  cmd->add_option("--t-max", cfg.t_max, "maximum flow time")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "tolerance on max |K - K_bar|")->capture_default_str();
  cmd->add_option("--out", cfg.out, "output prefix");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete conformal structures on closed triangulated surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* check = app.add_subcommand("check", "validate weights and report face nondegeneracy");
  add_common(check, cfg);
  CLI::App* geom = app.add_subcommand("geom", "per-face lengths, angles, h, Q and Jacobians");
  add_common(geom, cfg);
  CLI::App* flow = app.add_subcommand("flow", "extended Ricci flow or Calabi flow toward a target curvature");
  add_common(flow, cfg);
  add_flow_options(flow, cfg);
  flow->add_option("--method", cfg.method, "rk4, implicit-euler or calabi")->capture_default_str();
  CLI::App* solve = app.add_subcommand("solve", "Newton solve for a target curvature");
  add_common(solve, cfg);
  add_flow_options(solve, cfg);
  CLI::App* verify = app.add_subcommand("verify", "run the invariant battery");
  add_common(verify, cfg);
  verify->add_option("--seed", cfg.seed, "seed for the randomized instances")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*check) return cmd_check(cfg);
    if (*geom) return cmd_geom(cfg);
    if (*flow) return cmd_flow(cfg);
    if (*solve) return cmd_solve(cfg);
    if (*verify) return cmd_verify(cfg);
  } catch (const dcs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
