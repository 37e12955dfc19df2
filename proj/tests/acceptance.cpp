// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "dcs/curvature.hpp"
#include "dcs/energy.hpp"
#include "dcs/errors.hpp"
#include "dcs/euclid.hpp"
#include "dcs/flow.hpp"
#include "dcs/hyper.hpp"
#include "dcs/oracle.hpp"
#include "support.hpp"

namespace {

using dcs::Background;
using Clock = std::chrono::steady_clock;

constexpr double kJacobianFdTol = 1e-5;
constexpr double kEuclidLambdaMax = 1e-10;
constexpr double kKernelTol = 1e-8;
constexpr double kScanRelTol = 1e-3;
constexpr double kClosedThresholdTol = 1e-9;
constexpr double kGaussBonnetTol = 1e-10;
constexpr double kPathTol = 1e-8;
constexpr double kGradTol = 1e-5;
constexpr double kTranslationTol = 1e-8;
constexpr double kCurvatureTol = 1e-9;
constexpr int kNewtonMaxIter = 10;
constexpr double kFlowSeconds = 1.0;
constexpr double kSumUTol = 1e-10;
constexpr double kHalvedDtTol = 1e-6;
constexpr double kRigidEuclidTol = 1e-6;
constexpr double kRigidHyperTol = 1e-8;
constexpr int kHSignSamples = 100000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int n, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Offset of the sign change nearest to the threshold; other corners may add crossings elsewhere.
double nearest_gap(const dcs::ScanResult& scan, double threshold, double none) {
  double gap = none;
  for (double c : scan.crossings) gap = std::min(gap, std::abs(c - threshold));
  return gap;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct FaceSample {
  dcs::FaceWeights w;
  Eigen::Vector3d f;
};

// Nondegenerate face with no near-zero side and a comfortably positive area.
FaceSample random_face(std::mt19937_64& rng, Background b) {
  std::uniform_real_distribution<double> lf(-1.0, 1.0);
  for (;;) {
    FaceSample s{ref::random_weights(rng), Eigen::Vector3d(lf(rng), lf(rng), lf(rng))};
    if (b == Background::Euclidean) {
      const Eigen::Vector3d l = ref::lengths_e(s.w, s.f);
      if (l.allFinite() && l.minCoeff() > 1e-2 && ref::four_area_sq_e(l) > 1e-3 * std::pow(l.squaredNorm(), 2)) {
        return s;
      }
    } else {
      const Eigen::Vector3d c = ref::cosh_lengths_h(s.w, s.f);
      if (c.minCoeff() > 1.0001 && ref::sine_product_sq_h(c) > 1e-3 * std::pow(c.maxCoeff(), 4)) return s;
    }
  }
}

Eigen::Vector3d to_u(Background b, const dcs::FaceWeights& w, const Eigen::Vector3d& f) {
  if (b == Background::Euclidean) return f;
  Eigen::Vector3d u;
  for (int q = 0; q < 3; ++q) u[q] = ref::u_of_f_h(f[q], w.eps[q]);
  return u;
}

Eigen::Vector3d to_f(Background b, const dcs::FaceWeights& w, const Eigen::VectorXd& u) {
  if (b == Background::Euclidean) return u;
  Eigen::Vector3d f;
  for (int q = 0; q < 3; ++q) f[q] = w.eps[q] == 0 ? u[q] : std::log(std::sinh(2 * std::atanh(std::exp(u[q]))));
  return f;
}

Eigen::Matrix3d analytic_jacobian(Background b, const FaceSample& s) {
  return b == Background::Euclidean ? dcs::jacobian_e(s.w, s.f.array().exp()) : dcs::jacobian_h(s.w, s.f);
}

dcs::WeightedSurface random_ws(const dcs::TriangulatedSurface& s, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> eta(lo, hi);
  dcs::WeightScheme scheme = dcs::WeightScheme::uniform(s, 1, 1.0);
  for (const auto& e : s.edges()) scheme.set_eta(e.a, e.b, eta(rng));
  return dcs::WeightedSurface(s, scheme);
}

Eigen::VectorXd random_vec(int n, std::mt19937_64& rng, double center, double spread) {
  std::uniform_real_distribution<double> d(-spread, spread);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = center + d(rng);
  return v;
}

Outcome criterion1() {
  std::mt19937_64 rng(101);
  const auto t0 = Clock::now();
  double worst = 0;
  for (auto b : {Background::Euclidean, Background::Hyperbolic}) {
    for (int n = 0; n < 100; ++n) {
      const FaceSample s = random_face(rng, b);
      auto theta = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        const Eigen::Vector3d f = to_f(b, s.w, u);
        return b == Background::Euclidean ? *ref::angles_e(s.w, f) : *ref::angles_h(s.w, f);
      };
      const Eigen::MatrixXd fd = ref::central_diff(theta, to_u(b, s.w, s.f), 1e-6);
      worst = std::max(worst, (analytic_jacobian(b, s) - fd).cwiseAbs().maxCoeff());
    }
  }
  const double secs = seconds_since(t0);
  return {worst < kJacobianFdTol && secs < 5.0, fmt("200 faces, max entry error %.3g, %.3g s", worst, secs)};
}

Outcome criterion2() {
  std::mt19937_64 rng(102);
  double e_max = -1e300, kernel_err = 0, h_max = -1e300;
  for (int n = 0; n < 200; ++n) {
    const FaceSample se = random_face(rng, Background::Euclidean);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(analytic_jacobian(Background::Euclidean, se));
    e_max = std::max(e_max, es.eigenvalues()[2]);
    Eigen::Vector3d k = es.eigenvectors().col(2);
    if (k.sum() < 0) k = -k;
    kernel_err = std::max(kernel_err, (k - Eigen::Vector3d::Constant(1 / std::sqrt(3.0))).cwiseAbs().maxCoeff());
    const FaceSample sh = random_face(rng, Background::Hyperbolic);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eh(analytic_jacobian(Background::Hyperbolic, sh));
    h_max = std::max(h_max, eh.eigenvalues()[2]);
  }
  bool global_ok = true;
  double global_kernel = 0, global_second = 1e300, global_min_h = 1e300;
  for (const auto& s : {dcs::make_tetrahedron(), dcs::make_octahedron()}) {
    for (int n = 0; n < 10; ++n) {
      const auto ws = random_ws(s, rng, 0.5, 2.0);
      const Eigen::VectorXd f = random_vec(s.vertex_count(), rng, 0.0, 0.3);
      const Eigen::MatrixXd le = dcs::curvature_jacobian(ws, {Background::Euclidean, f});
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ee(le);
      Eigen::VectorXd k = ee.eigenvectors().col(0);
      if (k.sum() < 0) k = -k;
      const double ones = 1 / std::sqrt(static_cast<double>(s.vertex_count()));
      global_kernel = std::max(global_kernel, (k.array() - ones).abs().maxCoeff());
      global_second = std::min(global_second, ee.eigenvalues()[1]);
      global_ok = global_ok && std::abs(ee.eigenvalues()[0]) < 1e-10 && ee.eigenvalues()[1] > 1e-6;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(dcs::curvature_jacobian(ws, {Background::Hyperbolic, f}));
      global_min_h = std::min(global_min_h, eh.eigenvalues()[0]);
    }
  }
  global_ok = global_ok && global_kernel < kKernelTol && global_min_h > 0;
  const bool ok = e_max <= kEuclidLambdaMax && kernel_err < kKernelTol && h_max < 0 && global_ok;
  return {ok, fmt("face E lambda_max %.2g, kernel err %.2g, face H lambda_max %.3g", e_max, kernel_err, h_max) +
                  fmt("; global E 2nd eig %.3g kernel err %.2g, global H min eig %.3g", global_second, global_kernel,
                      global_min_h)};
}

Outcome criterion3() {
  std::mt19937_64 rng(103);
  const double closed = *dcs::degenerate_interval_e(dcs::FaceWeights::uniform(1, 2.0), 0, 1.0, 1.0);
  const double closed_err = std::abs(closed - 6.0 / (24.0 + 18.0 * std::sqrt(2.0)));
  double worst = 0;
  int e_count = 0, h_count = 0;
  std::uniform_real_distribution<double> lf(-0.5, 0.5);
  for (int n = 0; n < 100000 && (e_count < 50 || h_count < 50); ++n) {
    const dcs::FaceWeights w = ref::random_weights(rng);
    const int q = n % 3;
    if (w.a_coeff(q) <= 0) continue;
    const Eigen::Vector3d fixed_f(lf(rng), lf(rng), lf(rng));
    const int s = (q + 1) % 3, t = (q + 2) % 3;
    if (e_count < 50) {
      const Eigen::Vector3d r = fixed_f.array().exp();
      const auto th = dcs::degenerate_interval_e(w, q, r[s], r[t]);
      if (th && *th > 0) {
        const double hi = 4 * *th;
        const auto scan = dcs::scan_admissible(w, Background::Euclidean, q, r, 0, hi, 2001);
        worst = std::max(worst, nearest_gap(scan, *th, hi) / hi);
        ++e_count;
      }
    }
    if (h_count < 50) {
      std::optional<double> th;
      try {
        th = dcs::degenerate_interval_h(w, q, fixed_f[s], fixed_f[t]);
      } catch (const dcs::Error&) {
        continue;  // no real threshold for this corner
      }
      if (th) {
        const double lo = *th - 5, hi = *th + 5;
        const auto scan = dcs::scan_admissible(w, Background::Hyperbolic, q, fixed_f, lo, hi, 2001);
        worst = std::max(worst, nearest_gap(scan, *th, hi - lo) / (hi - lo));
        ++h_count;
      }
    }
  }
  const bool ok = closed_err < kClosedThresholdTol && e_count == 50 && h_count == 50 && worst < kScanRelTol;
  return {ok, fmt("closed form err %.2g; %g+", closed_err, e_count) +
                  fmt("%g schemes, worst scan offset %.3g of range", h_count, worst)};
}

Outcome criterion4() {
  std::mt19937_64 rng(104);
  double e_worst = 0, h_worst = 0;
  int extended = 0;
  for (const auto& s : {dcs::make_tetrahedron(), dcs::make_octahedron(), dcs::make_icosahedron(), dcs::make_torus(4, 4)}) {
    for (int n = 0; n < 10; ++n) {
      const auto ws = random_ws(s, rng, 0.5, 3.0);
      // Wide spread so that some states have degenerate faces.
      const Eigen::VectorXd f = random_vec(s.vertex_count(), rng, 0.0, 1.5);
      const auto ke = dcs::vertex_curvature(ws, {Background::Euclidean, f}, true);
      if (ke.extended) ++extended;
      e_worst = std::max(e_worst, std::abs(dcs::gauss_bonnet_residual(ke, s)));
      const dcs::ConformalState h{Background::Hyperbolic, random_vec(s.vertex_count(), rng, 0.0, 0.4)};
      const auto geom = dcs::evaluate_surface(ws, h, false);
      if (!geom.degenerate_faces.empty()) continue;
      double defect = 0;
      for (const auto& g : geom.faces) defect += ref::kPi - g.angles.sum();
      const auto kh = dcs::vertex_curvature(ws, h, false);
      h_worst = std::max(h_worst, std::abs(dcs::gauss_bonnet_residual(kh, s) - defect));
    }
  }
  const bool ok = e_worst < kGaussBonnetTol && h_worst < kGaussBonnetTol && extended > 0;
  return {ok, fmt("E residual %.2g (%g extended instances), H residual - area %.2g", e_worst, extended, h_worst)};
}

Outcome criterion5() {
  std::mt19937_64 rng(105);
  double path = 0, grad = 0, trans_face = 0, trans_global = 0;
  const auto s = dcs::make_octahedron();
  for (int n = 0; n < 5; ++n) {
    const auto ws = random_ws(s, rng, 0.5, 2.0);
    for (auto b : {Background::Euclidean, Background::Hyperbolic}) {
      const double c = b == Background::Euclidean ? 0.0 : -1.0;
      const Eigen::VectorXd u0 = random_vec(6, rng, c, 0.2), u1 = random_vec(6, rng, c, 0.2);
      const Eigen::VectorXd um = random_vec(6, rng, c, 0.2);
      const Eigen::VectorXd k_bar = Eigen::VectorXd::Zero(6);
      const double direct = dcs::potential_difference(ws, u0, u1, k_bar, b);
      const double via = dcs::potential_difference(ws, u0, um, k_bar, b) + dcs::potential_difference(ws, um, u1, k_bar, b);
      path = std::max(path, std::abs(direct - via));
      auto e = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd out(1);
        out[0] = dcs::ricci_energy(ws, x, b, true);
        return out;
      };
      const Eigen::VectorXd fd = ref::central_diff(e, u0, 1e-5).row(0).transpose();
      const auto st = dcs::ConformalState::from_u(b, u0, ws.scheme().epsilon);
      grad = std::max(grad, (fd - dcs::vertex_curvature(ws, st, true).values).cwiseAbs().maxCoeff());
    }
    const Eigen::VectorXd u = random_vec(6, rng, 0.0, 0.3);
    const double t = 0.41;
    const Eigen::VectorXd ut = (u.array() + t).matrix();
    trans_global = std::max(trans_global, std::abs(dcs::ricci_energy(ws, ut, Background::Euclidean, true) -
                                                   dcs::ricci_energy(ws, u, Background::Euclidean, true) -
                                                   2 * ref::kPi * s.euler_characteristic() * t));
    const Eigen::Vector3d uf = u.head<3>();
    const auto& w = ws.face_weights(0);
    trans_face = std::max(
        trans_face, std::abs(dcs::triangle_energy(w, (uf.array() + t).matrix(), Eigen::Vector3d::Zero(), Background::Euclidean, true) -
                             dcs::triangle_energy(w, uf, Eigen::Vector3d::Zero(), Background::Euclidean, true) - t * ref::kPi));
  }
  const bool ok = path < kPathTol && grad < kGradTol && trans_face < kTranslationTol && trans_global < kTranslationTol;
  return {ok, fmt("path %.2g, grad %.2g, ", path, grad) + fmt("translation face %.2g global %.2g", trans_face, trans_global)};
}

Outcome criterion6() {
  const auto s = dcs::make_tetrahedron();
  const dcs::WeightedSurface ws(s, dcs::WeightScheme::uniform(s, 1, 1.0));
  const Eigen::VectorXd k_bar = Eigen::VectorXd::Constant(4, 1.5 * ref::kPi);
  const double expect = 0.5 * std::log(1 + std::sqrt(3.0));
  const dcs::ConformalState s0{Background::Hyperbolic, Eigen::VectorXd::Zero(4)};
  const auto t0 = Clock::now();
  const auto tr = dcs::run_extended_ricci(ws, s0, k_bar, {});
  const double secs = seconds_since(t0);
  const auto nr = dcs::newton_solve(ws, s0, k_bar, {});
  const double flow_f = (tr.final_state.f.array() - expect).abs().maxCoeff();
  const double newton_f = (nr.state.f.array() - expect).abs().maxCoeff();
  const bool ok = tr.status == dcs::FlowStatus::Converged && tr.final_error < kCurvatureTol && secs < kFlowSeconds &&
                  nr.converged && nr.error < kCurvatureTol && nr.iterations <= kNewtonMaxIter && flow_f < 1e-8 &&
                  newton_f < 1e-8;
  return {ok, fmt("f* = %.10f; flow |f-f*| %.2g in %.3g s, ", expect, flow_f, secs) +
                  fmt("Newton |f-f*| %.2g in %g iterations", newton_f, nr.iterations)};
}

Outcome criterion7() {
  const auto s = dcs::make_tetrahedron();
  const dcs::WeightedSurface ws(s, dcs::WeightScheme::uniform(s, 1, 1.0));
  Eigen::VectorXd f = Eigen::VectorXd::Zero(4);
  f[0] = std::log(1.2);
  const Eigen::VectorXd k_bar = Eigen::VectorXd::Constant(4, ref::kPi);
  dcs::FlowOptions opts;
  const auto a = dcs::run_extended_ricci(ws, {Background::Euclidean, f}, k_bar, opts);
  opts.dt *= 0.5;
  const auto b = dcs::run_extended_ricci(ws, {Background::Euclidean, f}, k_bar, opts);
  double drift = 0;
  for (double v : a.sum_u) drift = std::max(drift, std::abs(v - f.sum()));
  for (double v : b.sum_u) drift = std::max(drift, std::abs(v - f.sum()));
  const double diff = (a.final_state.f - b.final_state.f).cwiseAbs().maxCoeff();
  const bool ok = a.status == dcs::FlowStatus::Converged && b.status == dcs::FlowStatus::Converged &&
                  a.final_error < kCurvatureTol && drift < kSumUTol && diff < kHalvedDtTol;
  return {ok, fmt("max|K-pi| %.2g, sum u drift %.2g, halved dt diff %.2g", a.final_error, drift, diff)};
}

Outcome criterion8() {
  const auto s = dcs::make_tetrahedron();
  const dcs::WeightedSurface ws(s, dcs::WeightScheme::uniform(s, 1, 2.0));
  Eigen::VectorXd f = Eigen::VectorXd::Zero(4);
  f[0] = std::log(0.1);
  const dcs::ConformalState s0{Background::Euclidean, f};
  const int degenerate = static_cast<int>(dcs::evaluate_surface(ws, s0, false).degenerate_faces.size());
  const Eigen::VectorXd k_bar = Eigen::VectorXd::Constant(4, ref::kPi);
  const auto tr = dcs::run_extended_ricci(ws, s0, k_bar, {});
  // Constant curvature class: uniform r, i.e. f equal up to the conserved mean.
  const Eigen::VectorXd centered = tr.final_state.f.array() - tr.final_state.f.mean();
  bool halted = false;
  dcs::FlowOptions ordinary;
  ordinary.extended = false;
  try {
    dcs::run_extended_ricci(ws, s0, k_bar, ordinary);
  } catch (const dcs::Error& e) {
    halted = e.code() == dcs::ErrorCode::DegenerateFace;
  }
  const bool ok = degenerate > 0 && tr.status == dcs::FlowStatus::Converged && tr.final_error < kCurvatureTol &&
                  centered.cwiseAbs().maxCoeff() < 1e-8 && halted;
  return {ok, fmt("%g degenerate faces at start, extended max|K-pi| %.2g, spread %.2g", degenerate, tr.final_error,
                  centered.cwiseAbs().maxCoeff()) +
                  (halted ? "; ordinary flow halted with DegenerateFace" : "; ordinary flow did not halt")};
}

Outcome criterion9() {
  std::mt19937_64 rng(109);
  double e_worst = 0, h_worst = 0;
  bool all_converged = true;
  for (const auto& s : {dcs::make_octahedron(), dcs::make_icosahedron()}) {
    for (int n = 0; n < 3; ++n) {
      const auto ws = random_ws(s, rng, 0.5, 2.0);
      const int nv = s.vertex_count();
      const dcs::ConformalState e_star{Background::Euclidean, random_vec(nv, rng, 0.0, 0.3)};
      const Eigen::VectorXd ke = dcs::vertex_curvature(ws, e_star, false).values;
      const auto a = dcs::newton_solve(ws, {Background::Euclidean, random_vec(nv, rng, 0.0, 0.2)}, ke, {});
      const auto b = dcs::newton_solve(ws, {Background::Euclidean, random_vec(nv, rng, 1.0, 0.2)}, ke, {});
      all_converged = all_converged && a.converged && b.converged;
      const Eigen::VectorXd da = a.state.f.array() - a.state.f.mean(), db = b.state.f.array() - b.state.f.mean();
      e_worst = std::max(e_worst, (da - db).cwiseAbs().maxCoeff());

      const dcs::ConformalState h_star{Background::Hyperbolic, random_vec(nv, rng, 0.0, 0.3)};
      const Eigen::VectorXd kh = dcs::vertex_curvature(ws, h_star, false).values;
      const auto c = dcs::newton_solve(ws, {Background::Hyperbolic, random_vec(nv, rng, -0.3, 0.2)}, kh, {});
      const auto d = dcs::newton_solve(ws, {Background::Hyperbolic, random_vec(nv, rng, 0.4, 0.2)}, kh, {});
      all_converged = all_converged && c.converged && d.converged;
      h_worst = std::max(h_worst, (c.state.f - d.state.f).cwiseAbs().maxCoeff());
    }
  }
  const bool ok = all_converged && e_worst < kRigidEuclidTol && h_worst < kRigidHyperTol;
  return {ok, fmt("12 solve pairs; E scale-quotient diff %.2g, H diff %.2g", e_worst, h_worst)};
}

Outcome criterion10() {
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> lf(-2.5, 2.5);
  long two_nonpositive = 0, bad_degenerate = 0, degenerate = 0;
  for (int n = 0; n < kHSignSamples; ++n) {
    const Background b = n % 2 == 0 ? Background::Euclidean : Background::Hyperbolic;
    const dcs::FaceWeights w = ref::random_weights(rng, -0.95, 4.0);
    const Eigen::Vector3d f(lf(rng), lf(rng), lf(rng));
    const dcs::TriangleGeom g = dcs::evaluate_face(b, w, f, false);
    int nonpositive = 0, negative = 0;
    for (int q = 0; q < 3; ++q) {
      nonpositive += g.h[q] <= 0;
      negative += g.h[q] < 0;
    }
    if (nonpositive >= 2) ++two_nonpositive;
    // Degeneracy judged independently from the reference side lengths.
    const bool deg = b == Background::Euclidean ? ref::four_area_sq_e(ref::lengths_e(w, f)) <= 0
                                                : ref::sine_product_sq_h(ref::cosh_lengths_h(w, f)) <= 0;
    if (deg) {
      ++degenerate;
      if (negative != 1) ++bad_degenerate;
    }
  }
  const bool ok = two_nonpositive == 0 && bad_degenerate == 0 && degenerate > 0;
  return {ok, fmt("%g samples, %g degenerate; ", kHSignSamples, static_cast<double>(degenerate)) +
                  fmt("%g with two nonpositive h, %g degenerate without exactly one negative h",
                      static_cast<double>(two_nonpositive), static_cast<double>(bad_degenerate))};
}

}  // namespace

int main() {
  report(1, "face Jacobians vs central differences", criterion1);
  report(2, "definiteness of face and global Jacobians", criterion2);
  report(3, "degenerate thresholds vs sign scans", criterion3);
  report(4, "Gauss-Bonnet", criterion4);
  report(5, "energy path independence, gradient, translation", criterion5);
  report(6, "hyperbolic closed-form target", criterion6);
  report(7, "Euclidean normalized flow", criterion7);
  report(8, "extended flow through a degenerate start", criterion8);
  report(9, "rigidity from independent starts", criterion9);
  report(10, "h-sign law", criterion10);
  return failures == 0 ? 0 : 1;
}
