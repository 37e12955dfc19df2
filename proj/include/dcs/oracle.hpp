#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dcs/geometry.hpp"
#include "dcs/weights.hpp"

namespace dcs {

using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Central differences (fn(x + h e_k) - fn(x - h e_k)) / 2h per column.
// Throws InvalidArgument for step <= 0 and EvaluationFailed when fn throws.
Eigen::MatrixXd fd_jacobian(const VectorFn& fn, const Eigen::VectorXd& x, double step);

struct ScanResult {
  int axis = 0;
  std::vector<double> grid;
  std::vector<int> signs;          // sign of Q at each grid point (-1, 0, 1)
  std::vector<double> crossings;   // midpoints of consecutive samples whose signs differ
};

// Samples Q along corner `axis`, the other corners held at `fixed` (the axis entry is ignored).
// Euclidean scans r_axis linearly over [lo, hi]; hyperbolic scans f_axis. Throws InvalidArgument
// for fewer than 2 samples.
ScanResult scan_admissible(const FaceWeights& w, Background b, int axis, const Eigen::Vector3d& fixed, double lo,
                           double hi, int samples);

// All eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi rotations.
// Throws NotSymmetric when |A - A^T| exceeds 1e-10 (relative to the largest entry, at least 1).
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);
// Eigenvalues and eigenvectors (columns), ascending.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> symmetric_eigen(const Eigen::MatrixXd& a);

std::pair<double, double> min_max_eigenvalues(const Eigen::MatrixXd& a);

}  // namespace dcs
