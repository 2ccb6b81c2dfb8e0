#pragma once

#include <span>
#include <vector>

#include "ramanforge/core.hpp"

namespace ramanforge {

/// Iterative modified polynomial (ModPoly) baseline settings.
struct ModPolyConfig {
  int order_low = 3;
  int order_high = 6;
  int max_iters = 100;
  /// Stop once the relative change of ||y - b||_2 falls below this.
  double tol = 1e-6;

  void validate() const;
};

/// Outcome of fitting one polynomial order.
struct ModPolyFit {
  int order = 0;
  std::vector<double> baseline;
  /// Peak-clipped working signal after the last iteration; never above y.
  std::vector<double> working;
  int iterations = 0;
  /// ||y - b||_2 at convergence.
  double residual_norm = 0.0;
  /// RMS of y - b over points the final baseline does not lie below.
  double selection_score = 0.0;
};

struct ModPolyResult {
  Spectrum baseline;
  Spectrum corrected;
  int order = 0;
  int iterations = 0;
};

/// Fits one order: least squares on the working signal, then clip the working
/// signal to the fit wherever it lies above, until converged.
ModPolyFit modpoly_fit_order(std::span<const double> y, int order, const ModPolyConfig& cfg);

/// Runs every order in [order_low, order_high] and keeps the one with the
/// smallest selection score; corrected = s - baseline.
ModPolyResult modpoly_baseline(const Spectrum& s, const ModPolyConfig& cfg = {});

}  // namespace ramanforge
