#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ramanforge/core.hpp"

namespace ramanforge {

struct NnlsOptions {
  /// Outer iteration cap; 0 means 3 * number of columns.
  int max_iterations = 0;
  /// Dual feasibility threshold; <= 0 picks one from the problem scale.
  double tolerance = 0.0;
};

struct NnlsResult {
  Eigen::VectorXd weights;
  int iterations = 0;
  /// ||A x - b||^2 after each outer iteration, starting from x = 0.
  std::vector<double> objective_trace;
};

/// Lawson-Hanson active-set solver for min ||A x - b||_2 subject to x >= 0.
/// Throws ConvergenceError when the iteration cap is reached.
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                const NnlsOptions& options = {});

/// Columns of the design matrix are the basis spectra.
std::vector<double> nnls(std::span<const Spectrum> basis, const Spectrum& target);

Eigen::MatrixXd basis_matrix(std::span<const Spectrum> basis);

}  // namespace ramanforge
