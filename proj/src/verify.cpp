#include "dcs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <numbers>
#include <sstream>

#include "dcs/curvature.hpp"
#include "dcs/energy.hpp"
#include "dcs/errors.hpp"
#include "dcs/euclid.hpp"
#include "dcs/hyper.hpp"
#include "dcs/oracle.hpp"
#include "face_common.hpp"

namespace dcs {

namespace {

// Distance from the threshold to the nearest sign change; `none` when the scan found none.
// Other corners' regions can add crossings elsewhere on the axis.
double nearest_crossing_gap(const ScanResult& scan, double threshold, double none) {
  double gap = none;
  for (double c : scan.crossings) gap = std::min(gap, std::abs(c - threshold));
  return gap;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Eigen::Vector3d face_u(const FaceWeights& w, Background b, const Eigen::Vector3d& f) {
  Eigen::Vector3d u;
  for (int q = 0; q < 3; ++q) u[q] = u_of_f(b, f[q], w.eps[static_cast<std::size_t>(q)]);
  return u;
}

Eigen::Vector3d face_f(const FaceWeights& w, Background b, const Eigen::Vector3d& u) {
  Eigen::Vector3d f;
  for (int q = 0; q < 3; ++q) f[q] = f_of_u(b, u[q], w.eps[static_cast<std::size_t>(q)]);
  return f;
}

// Worst relative deviation of the analytic face Jacobian from central differences.
double face_jacobian_fd_error(const FaceWeights& w, Background b, const Eigen::Vector3d& f, const Eigen::Matrix3d& jac) {
  const VectorFn angles = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    return evaluate_face(b, w, face_f(w, b, u), false).angles;
  };
  const Eigen::MatrixXd fd = fd_jacobian(angles, face_u(w, b, f), 1e-6);
  return (fd - jac).cwiseAbs().maxCoeff() / std::max(1.0, jac.cwiseAbs().maxCoeff());
}

class Battery {
 public:
  explicit Battery(std::string label) : label_(std::move(label)) {}

  void add(const std::string& name, bool pass, const std::string& detail) {
    results_.push_back({label_ + ": " + name, pass, detail});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string label_;
  std::vector<CheckResult> results_;
};

}  // namespace

FaceWeights random_face_weights(std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> eta(-1.0, 4.0);
  for (;;) {
    FaceWeights w;
    for (int q = 0; q < 3; ++q) {
      w.eps[static_cast<std::size_t>(q)] = coin(rng) ? 1 : 0;
      w.eta[static_cast<std::size_t>(q)] = eta(rng);
    }
    bool ok = true;
    for (int q = 0; q < 3; ++q) {
      const int s = (q + 1) % 3;
      const int t = (q + 2) % 3;
      ok = ok && w.eps[static_cast<std::size_t>(s)] * w.eps[static_cast<std::size_t>(t)] + w.eta[static_cast<std::size_t>(q)] > 0.0;
      ok = ok && w.gamma(q) >= 0.0;
    }
    if (ok) return w;
  }
}

std::vector<CheckResult> verify_instance(const std::string& label, const TriangulatedSurface& surface,
                                         const WeightScheme& scheme, const ConformalState& state, std::uint64_t seed) {
  Battery battery(label);
  const Background b = state.background;

  ConditionReport report;
  try {
    report = validate_scheme(surface, scheme);
  } catch (const Error& e) {
    battery.add("structure conditions", false, e.what());
    return battery.take();
  }
  if (!report.admissible()) {
    std::ostringstream os;
    for (std::size_t k = 0; k < report.violations.size(); ++k) {
      if (k) os << "; ";
      os << report.violations[k].describe();
    }
    battery.add("structure conditions", false, os.str());
    return battery.take();
  }
  battery.add("structure conditions", true, "C1 and C2 hold");

  const WeightedSurface ws(surface, scheme);
  const SurfaceGeometry geom = evaluate_surface(ws, state, true);
  const int n = surface.vertex_count();

  // Face Jacobians.
  double fd_err = 0.0;
  double worst_lmax = -std::numeric_limits<double>::infinity();
  double kernel_err = 0.0;
  int nondegenerate = 0;
  for (int fi = 0; fi < surface.face_count(); ++fi) {
    const TriangleGeom& g = geom.faces[static_cast<std::size_t>(fi)];
    if (g.degenerate) continue;
    ++nondegenerate;
    const Eigen::Vector3d f = face_factors(surface, state.f, fi);
    fd_err = std::max(fd_err, face_jacobian_fd_error(ws.face_weights(fi), b, f, g.jacobian));
    const auto [values, vectors] = symmetric_eigen(g.jacobian);
    const double scale = std::max(1.0, g.jacobian.cwiseAbs().maxCoeff());
    worst_lmax = std::max(worst_lmax, values[2] / scale);
    if (b == Background::Euclidean) {
      const Eigen::Vector3d ones = Eigen::Vector3d::Ones() / std::sqrt(3.0);
      Eigen::Vector3d k = vectors.col(2);
      if (k.dot(ones) < 0) k = -k;
      kernel_err = std::max(kernel_err, (k - ones).cwiseAbs().maxCoeff());
    }
  }
  if (nondegenerate > 0) {
    battery.add("face jacobian vs finite differences", fd_err < 1e-5, "max relative error " + fmt(fd_err));
    if (b == Background::Euclidean) {
      battery.add("face jacobian negative semi-definite, kernel (1,1,1)", worst_lmax <= 1e-10 && kernel_err < 1e-8,
                  "max lambda " + fmt(worst_lmax) + ", kernel deviation " + fmt(kernel_err));
    } else {
      battery.add("face jacobian negative definite", worst_lmax < 0.0, "max lambda " + fmt(worst_lmax));
    }
  }

  // Gauss-Bonnet.
  const double residual = geom.curvature.sum() - 2.0 * std::numbers::pi * surface.euler_characteristic();
  if (b == Background::Euclidean) {
    battery.add("gauss-bonnet", std::abs(residual) < 1e-10, "residual " + fmt(residual));
  } else {
    double area = 0.0;
    for (const TriangleGeom& g : geom.faces) area += std::numbers::pi - g.angles.sum();
    battery.add("gauss-bonnet", std::abs(residual - area) < 1e-10, "residual - area " + fmt(residual - area));
  }

  // Global Lambda.
  if (geom.degenerate_faces.empty()) {
    const Eigen::VectorXd values = symmetric_eigenvalues(geom.lambda);
    const double scale = std::max(1.0, geom.lambda.cwiseAbs().maxCoeff());
    if (b == Background::Euclidean) {
      const double kernel = (geom.lambda * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
      const bool ok = std::abs(values[0]) < 1e-10 * scale && values[1] > 1e-10 && kernel < 1e-10 * scale;
      battery.add("curvature jacobian PSD, rank N-1", ok,
                  "lambda_1 " + fmt(values[0]) + ", lambda_2 " + fmt(values[1]));
    } else {
      battery.add("curvature jacobian positive definite", values[0] > 0.0, "lambda_min " + fmt(values[0]));
    }
  } else {
    battery.add("nondegenerate state", true,
                std::to_string(geom.degenerate_faces.size()) + " degenerate faces use extended angles");
  }

  // Path independence of one triangle energy (extended form is defined everywhere).
  {
    const FaceWeights& w = ws.face_weights(0);
    const Eigen::Vector3d u1 = face_u(w, b, face_factors(surface, state.f, 0));
    Eigen::Vector3d u0 = u1;
    Eigen::Vector3d mid = u1;
    u0 += Eigen::Vector3d(-0.3, 0.2, 0.1);
    mid += Eigen::Vector3d(0.1, -0.2, 0.15);
    if (b == Background::Hyperbolic) {
      // Keep the detour inside u < 0 where eps = 1.
      for (int q = 0; q < 3; ++q) {
        if (w.eps[static_cast<std::size_t>(q)] == 1) {
          u0[q] = std::min(u0[q], -0.05);
          mid[q] = std::min(mid[q], -0.05);
        }
      }
    }
    const double direct = triangle_energy(w, u1, u0, b, true);
    const double legs = triangle_energy(w, mid, u0, b, true) + triangle_energy(w, u1, mid, b, true);
    battery.add("energy path independence", std::abs(direct - legs) < 1e-8, "difference " + fmt(direct - legs));
  }

  // Degenerate-region scans on the faces of the instance (first 8 distinct corners with A > 0).
  {
    int scanned = 0;
    double worst = 0.0;
    bool ok = true;
    for (int fi = 0; fi < surface.face_count() && scanned < 8; ++fi) {
      const FaceWeights& w = ws.face_weights(fi);
      const Eigen::Vector3d f = face_factors(surface, state.f, fi);
      for (int q = 0; q < 3 && scanned < 8; ++q) {
        if (!(w.a_coeff(q) > 0.0)) continue;
        const int s = (q + 1) % 3;
        const int t = (q + 2) % 3;
        double threshold = 0.0;
        double lo = 0.0;
        double hi = 0.0;
        if (b == Background::Euclidean) {
          const Eigen::Vector3d r = f.array().exp();
          auto th = degenerate_interval_e(w, q, r[s], r[t]);
          if (!th) continue;
          threshold = *th;
          lo = 0.25 * threshold;
          hi = 4.0 * threshold;
          const ScanResult scan = scan_admissible(w, b, q, r, lo, hi, 2001);
          ++scanned;
          const double cell = (hi - lo) / 2000.0;
          const double err = nearest_crossing_gap(scan, threshold, hi - lo);
          worst = std::max(worst, err / (hi - lo));
          ok = ok && err <= cell;
        } else {
          std::optional<double> th;
          try {
            th = degenerate_interval_h(w, q, f[s], f[t]);
          } catch (const Error&) {
            continue;
          }
          if (!th) continue;
          threshold = *th;
          lo = threshold - 2.0;
          hi = threshold + 2.0;
          const ScanResult scan = scan_admissible(w, b, q, f, lo, hi, 2001);
          ++scanned;
          const double cell = (hi - lo) / 2000.0;
          const double err = nearest_crossing_gap(scan, threshold, hi - lo);
          worst = std::max(worst, err / (hi - lo));
          ok = ok && err <= cell;
        }
      }
    }
    if (scanned > 0) {
      battery.add("degenerate-region thresholds vs sign scan", ok,
                  std::to_string(scanned) + " corners, worst offset " + fmt(worst) + " of range");
    }
  }

  // h-sign law over random kappa for the instance's face weights.
  {
    std::mt19937_64 rng(seed);
    // log r in Euclidean mode, f in hyperbolic mode.
    std::uniform_real_distribution<double> log_factor(-std::log(1e3), std::log(1e3));
    int bad = 0;
    int degenerate_bad = 0;
    const int faces = std::min(surface.face_count(), 16);
    for (int fi = 0; fi < faces; ++fi) {
      const FaceWeights& w = ws.face_weights(fi);
      for (int k = 0; k < 500; ++k) {
        Eigen::Vector3d kappa;
        for (int q = 0; q < 3; ++q) {
          const double x = log_factor(rng);
          kappa[q] = b == Background::Euclidean ? std::exp(-x)
                                                : std::sqrt(std::exp(-2.0 * x) + w.eps[static_cast<std::size_t>(q)]);
        }
        const Eigen::Vector3d h = h_values_unchecked(kappa, w);
        const int nonpositive = static_cast<int>((h.array() <= 0.0).count());
        if (nonpositive >= 2) ++bad;
        const double q_value = detail::quadratic_form(w, kappa) + (b == Background::Hyperbolic ? w.g_term() : 0.0);
        if (!(q_value > 0.0)) {
          const int negative = static_cast<int>((h.array() < 0.0).count());
          if (negative != 1) ++degenerate_bad;
        }
      }
    }
    battery.add("h-sign law", bad == 0 && degenerate_bad == 0,
                std::to_string(bad) + " samples with two nonpositive h, " + std::to_string(degenerate_bad) +
                    " degenerate samples without exactly one negative h");
  }

  return battery.take();
}

std::vector<CheckResult> verify_builtin(std::uint64_t seed) {
  std::vector<CheckResult> all;
  auto append = [&](std::vector<CheckResult> part) {
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  };

  const TriangulatedSurface tet = make_tetrahedron();
  const TriangulatedSurface oct = make_octahedron();
  append(verify_instance("tetrahedron euclidean eps=1 eta=1", tet, WeightScheme::uniform(tet, 1, 1.0),
                         {Background::Euclidean, Eigen::VectorXd::Zero(4)}, seed));
  append(verify_instance("tetrahedron hyperbolic eps=1 eta=1", tet, WeightScheme::uniform(tet, 1, 1.0),
                         {Background::Hyperbolic, Eigen::VectorXd::Zero(4)}, seed));
  append(verify_instance("octahedron euclidean eps=0 eta=1", oct, WeightScheme::uniform(oct, 0, 1.0),
                         {Background::Euclidean, Eigen::VectorXd::Zero(6)}, seed));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(-0.5, 0.5);
  std::uniform_real_distribution<double> positive_eta(0.05, 3.0);
  std::bernoulli_distribution coin(0.5);
  const TriangulatedSurface ico = make_icosahedron();
  const TriangulatedSurface torus = make_torus(4, 4);
  for (int round = 0; round < 2; ++round) {
    for (const auto* surface : {&oct, &ico, &torus}) {
      WeightScheme scheme;
      for (int v = 0; v < surface->vertex_count(); ++v) scheme.epsilon.push_back(coin(rng) ? 1 : 0);
      for (const EdgeKey& e : surface->edges()) scheme.eta[e] = positive_eta(rng);
      for (Background b : {Background::Euclidean, Background::Hyperbolic}) {
        Eigen::VectorXd f(surface->vertex_count());
        for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = factor(rng);
        const std::string label = "random " + std::to_string(surface->vertex_count()) + "-vertex " +
                                  std::string(background_name(b)) + " #" + std::to_string(round);
        append(verify_instance(label, *surface, scheme, {b, f}, seed + static_cast<std::uint64_t>(round)));
      }
    }
  }
  return all;
}

}  // namespace dcs
