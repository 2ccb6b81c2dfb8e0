#include "ramanforge/evalkit/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ramanforge/errors.hpp"

namespace ramanforge {

namespace {

// Unconstrained least squares restricted to the passive columns; entries
// outside the passive set are zero.
Eigen::VectorXd passive_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(a.cols());
  if (cols.empty()) return z;
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
  const Eigen::VectorXd sol = sub.colPivHouseholderQr().solve(b);
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = sol(static_cast<Eigen::Index>(k));
  return z;
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const NnlsOptions& options) {
  if (a.rows() != b.size()) throw ValidationError("NNLS: basis rows do not match target length");
  if (a.cols() == 0) throw ValidationError("NNLS: empty basis");

  const Eigen::Index n = a.cols();
  const int max_iter = options.max_iterations > 0 ? options.max_iterations
                                                  : static_cast<int>(3 * n);
  const double tol = options.tolerance > 0.0
                         ? options.tolerance
                         : 1e3 * std::numeric_limits<double>::epsilon() * a.norm() *
                               std::max(b.norm(), 1.0);

  NnlsResult result;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  result.objective_trace.push_back(b.squaredNorm());

  Eigen::VectorXd w = a.transpose() * (b - a * x);
  int iter = 0;
  while (true) {
    // Most violated dual constraint among the active (zero) set.
    Eigen::Index j_max = -1;
    double w_max = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w(j) > w_max) {
        w_max = w(j);
        j_max = j;
      }
    }
    if (j_max < 0) break;
    if (++iter > max_iter) {
      throw ConvergenceError("NNLS did not converge within " + std::to_string(max_iter) +
                             " iterations (degenerate basis?)");
    }
    passive[static_cast<std::size_t>(j_max)] = true;

    Eigen::VectorXd z = passive_solve(a, b, passive);
    if (z(j_max) <= 0.0) {
      // Numerically dependent column: undo and stop considering it this round.
      passive[static_cast<std::size_t>(j_max)] = false;
      w(j_max) = 0.0;
      bool remaining = false;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!passive[static_cast<std::size_t>(j)] && w(j) > tol) remaining = true;
      }
      if (!remaining) break;
      continue;
    }

    int inner = 0;
    while (true) {
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) feasible = false;
      }
      if (feasible) break;
      if (++inner > max_iter) {
        throw ConvergenceError("NNLS inner loop did not converge");
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          alpha = std::min(alpha, x(j) / (x(j) - z(j)));
        }
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= 0.0) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
      z = passive_solve(a, b, passive);
    }
    x = z;
    const Eigen::VectorXd residual = b - a * x;
    w = a.transpose() * residual;
    result.objective_trace.push_back(residual.squaredNorm());
  }

  result.weights = x;
  result.iterations = iter;
  return result;
}

Eigen::MatrixXd basis_matrix(std::span<const Spectrum> basis) {
  if (basis.empty()) throw ValidationError("NNLS: empty basis");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(basis.front().size()),
                    static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    require_same_grid(basis.front().grid(), basis[k].grid(), "NNLS basis columns");
    for (std::size_t i = 0; i < basis[k].size(); ++i) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = basis[k][i];
    }
  }
  return a;
}

std::vector<double> nnls(std::span<const Spectrum> basis, const Spectrum& target) {
  const Eigen::MatrixXd a = basis_matrix(basis);
  require_same_grid(basis.front().grid(), target.grid(), "NNLS basis vs target");
  const Eigen::Map<const Eigen::VectorXd> b(target.data().data(),
                                            static_cast<Eigen::Index>(target.size()));
  const NnlsResult r = nnls(a, b);
  return {r.weights.data(), r.weights.data() + r.weights.size()};
}

}  // namespace ramanforge
