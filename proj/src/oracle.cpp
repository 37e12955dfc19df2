#include "dcs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dcs/errors.hpp"
#include "dcs/euclid.hpp"
#include "dcs/hyper.hpp"

namespace dcs {

Eigen::MatrixXd fd_jacobian(const VectorFn& fn, const Eigen::VectorXd& x, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  auto call = [&](const Eigen::VectorXd& at) {
    try {
      return fn(at);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::EvaluationFailed, e.what());
    }
  };
  Eigen::MatrixXd jac;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Eigen::VectorXd plus = x;
    Eigen::VectorXd minus = x;
    plus[k] += step;
    minus[k] -= step;
    const Eigen::VectorXd col = (call(plus) - call(minus)) / (2.0 * step);
    if (k == 0) jac.resize(col.size(), x.size());
    jac.col(k) = col;
  }
  return jac;
}

ScanResult scan_admissible(const FaceWeights& w, Background b, int axis, const Eigen::Vector3d& fixed, double lo,
                           double hi, int samples) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "a scan needs at least 2 samples");
  if (axis < 0 || axis > 2) throw Error(ErrorCode::CornerNotInFace, "axis " + std::to_string(axis));
  ScanResult out;
  out.axis = axis;
  Eigen::Vector3d x = fixed;
  for (int i = 0; i < samples; ++i) {
    const double v = lo + (hi - lo) * i / (samples - 1);
    x[axis] = v;
    const double q = b == Background::Euclidean ? q_value_e(w, x) : q_value_h(w, x);
    out.grid.push_back(v);
    out.signs.push_back(q > 0.0 ? 1 : (q < 0.0 ? -1 : 0));
  }
  // A crossing needs opposite nonzero signs; zero or undefined samples (r = 0) are skipped over.
  std::size_t last = out.grid.size();
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    if (out.signs[i] == 0) continue;
    if (last < out.grid.size() && out.signs[i] != out.signs[last]) {
      out.crossings.push_back(0.5 * (out.grid[i] + out.grid[last]));
    }
    last = i;
  }
  return out;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> symmetric_eigen(const Eigen::MatrixXd& input) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  const double scale = std::max(1.0, input.cwiseAbs().maxCoeff());
  if ((input - input.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorCode::NotSymmetric, "asymmetry exceeds 1e-10");
  }
  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        // Rotation angle from the stable tangent formula.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    values[k] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return {values, vectors};
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) { return symmetric_eigen(a).first; }

std::pair<double, double> min_max_eigenvalues(const Eigen::MatrixXd& a) {
  const Eigen::VectorXd values = symmetric_eigenvalues(a);
  if (values.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  return {values[0], values[values.size() - 1]};
}

}  // namespace dcs
