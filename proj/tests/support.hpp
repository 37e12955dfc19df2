#pragma once

// Reference formulas written directly from the length definitions and the classical laws of
// cosines; they share no code with the library kernels.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include <Eigen/Core>

#include "dcs/weights.hpp"

namespace ref {

inline constexpr double kPi = std::numbers::pi;

inline double length_e(double fi, double fj, int ei, int ej, double eta) {
  return std::sqrt(ei * std::exp(2 * fi) + ej * std::exp(2 * fj) + 2 * eta * std::exp(fi + fj));
}

inline double cosh_length_h(double fi, double fj, int ei, int ej, double eta) {
  return std::sqrt((1 + ei * std::exp(2 * fi)) * (1 + ej * std::exp(2 * fj))) + eta * std::exp(fi + fj);
}

// Opposite-corner convention: entry q is the edge between the other two corners.
inline Eigen::Vector3d lengths_e(const dcs::FaceWeights& w, const Eigen::Vector3d& f) {
  Eigen::Vector3d l;
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3, t = (q + 2) % 3;
    l[q] = length_e(f[s], f[t], w.eps[s], w.eps[t], w.eta[q]);
  }
  return l;
}

inline Eigen::Vector3d cosh_lengths_h(const dcs::FaceWeights& w, const Eigen::Vector3d& f) {
  Eigen::Vector3d c;
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3, t = (q + 2) % 3;
    c[q] = cosh_length_h(f[s], f[t], w.eps[s], w.eps[t], w.eta[q]);
  }
  return c;
}

// 4 * area^2 from Heron, in squared-length form.
inline double four_area_sq_e(const Eigen::Vector3d& l) {
  const double a = l[0] * l[0], b = l[1] * l[1], c = l[2] * l[2];
  return (2 * (a * b + a * c + b * c) - a * a - b * b - c * c) / 4.0;
}

// sinh^2 l_qs sinh^2 l_qt sin^2 theta_q, symmetric in the corners.
inline double sine_product_sq_h(const Eigen::Vector3d& c) {
  return 1 + 2 * c[0] * c[1] * c[2] - c[0] * c[0] - c[1] * c[1] - c[2] * c[2];
}

inline std::optional<Eigen::Vector3d> angles_e(const dcs::FaceWeights& w, const Eigen::Vector3d& f) {
  const Eigen::Vector3d l = lengths_e(w, f);
  if (!l.allFinite() || four_area_sq_e(l) <= 0) return std::nullopt;
  Eigen::Vector3d th;
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3, t = (q + 2) % 3;
    th[q] = std::acos((l[s] * l[s] + l[t] * l[t] - l[q] * l[q]) / (2 * l[s] * l[t]));
  }
  return th;
}

inline std::optional<Eigen::Vector3d> angles_h(const dcs::FaceWeights& w, const Eigen::Vector3d& f) {
  const Eigen::Vector3d c = cosh_lengths_h(w, f);
  if (sine_product_sq_h(c) <= 0) return std::nullopt;
  Eigen::Vector3d th;
  for (int q = 0; q < 3; ++q) {
    const int s = (q + 1) % 3, t = (q + 2) % 3;
    const double sh_s = std::sqrt(c[s] * c[s] - 1), sh_t = std::sqrt(c[t] * c[t] - 1);
    th[q] = std::acos((c[s] * c[t] - c[q]) / (sh_s * sh_t));
  }
  return th;
}

// u from f: u = f in the Euclidean background; hyperbolic u = ln tanh(r/2) for eps = 1
// where sinh r = e^f, and u = f for eps = 0.
inline double u_of_f_h(double f, int eps) {
  if (eps == 0) return f;
  const double r = std::asinh(std::exp(f));
  return std::log(std::tanh(r / 2));
}

// Central differences of fn on x.
template <class Fn>
Eigen::MatrixXd central_diff(Fn fn, const Eigen::VectorXd& x, double h) {
  const Eigen::VectorXd y0 = fn(x);
  Eigen::MatrixXd j(y0.size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Eigen::VectorXd xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    j.col(k) = (fn(xp) - fn(xm)) / (2 * h);
  }
  return j;
}

// Admissible weights drawn independently of the library's generator: C1 on every edge and
// C2 at every corner, checked inline.
inline dcs::FaceWeights random_weights(std::mt19937_64& rng, double eta_lo = -0.9, double eta_hi = 3.0) {
  std::uniform_real_distribution<double> eta(eta_lo, eta_hi);
  std::bernoulli_distribution coin(0.7);
  for (;;) {
    dcs::FaceWeights w;
    for (int q = 0; q < 3; ++q) {
      w.eps[q] = coin(rng) ? 1 : 0;
      w.eta[q] = eta(rng);
    }
    bool ok = true;
    for (int q = 0; q < 3 && ok; ++q) {
      const int s = (q + 1) % 3, t = (q + 2) % 3;
      ok = w.eps[s] * w.eps[t] + w.eta[q] > 0 && w.eps[q] * w.eta[q] + w.eta[t] * w.eta[s] >= 0;
    }
    if (ok) return w;
  }
}

}  // namespace ref
