#include "ramanforge/classical/modpoly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ramanforge/errors.hpp"

namespace ramanforge {

namespace {

// Least-squares polynomial on a fixed abscissa; the QR factorization is reused
// for every right-hand side.
class PolyFitter {
 public:
  PolyFitter(std::size_t n, int order) : vander_(static_cast<Eigen::Index>(n), order + 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = n > 1 ? -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
      double p = 1.0;
      for (int c = 0; c <= order; ++c, p *= x) vander_(static_cast<Eigen::Index>(i), c) = p;
    }
    qr_.compute(vander_);
  }

  void fit(const std::vector<double>& y, std::vector<double>& out) const {
    const Eigen::Map<const Eigen::VectorXd> rhs(y.data(), static_cast<Eigen::Index>(y.size()));
    const Eigen::VectorXd coeffs = qr_.solve(rhs);
    const Eigen::VectorXd fitted = vander_ * coeffs;
    out.assign(fitted.data(), fitted.data() + fitted.size());
  }

 private:
  Eigen::MatrixXd vander_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

double l2_distance(std::span<const double> a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

void ModPolyConfig::validate() const {
  if (order_low < 0 || order_low > order_high) {
    throw ValidationError("ModPoly order range must satisfy 0 <= low <= high");
  }
  if (!(tol > 0.0)) throw ValidationError("ModPoly tolerance must be > 0");
  if (max_iters < 1) throw ValidationError("ModPoly max_iters must be >= 1");
}

ModPolyFit modpoly_fit_order(std::span<const double> y, int order, const ModPolyConfig& cfg) {
  if (order < 0 || static_cast<std::size_t>(order) >= y.size()) {
    throw ValidationError("ModPoly order " + std::to_string(order) +
                          " needs more than " + std::to_string(y.size()) + " points");
  }
  const PolyFitter fitter(y.size(), order);

  ModPolyFit fit;
  fit.order = order;
  fit.working.assign(y.begin(), y.end());
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= cfg.max_iters; ++it) {
    fitter.fit(fit.working, fit.baseline);
    fit.iterations = it;
    fit.residual_norm = l2_distance(y, fit.baseline);
    for (std::size_t i = 0; i < y.size(); ++i) {
      fit.working[i] = std::min(fit.working[i], fit.baseline[i]);
    }
    if (!std::isnan(previous)) {
      const double change = std::abs(fit.residual_norm - previous);
      if (change <= cfg.tol * std::max(previous, std::numeric_limits<double>::min())) break;
    }
    previous = fit.residual_norm;
  }

  double sq = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] <= fit.baseline[i]) {
      const double d = y[i] - fit.baseline[i];
      sq += d * d;
      ++count;
    }
  }
  fit.selection_score = count > 0 ? std::sqrt(sq / static_cast<double>(count)) : 0.0;
  return fit;
}

ModPolyResult modpoly_baseline(const Spectrum& s, const ModPolyConfig& cfg) {
  cfg.validate();
  ModPolyFit best;
  bool have_best = false;
  for (int order = cfg.order_low; order <= cfg.order_high; ++order) {
    ModPolyFit fit = modpoly_fit_order(s.values(), order, cfg);
    if (!have_best || fit.selection_score < best.selection_score) {
      best = std::move(fit);
      have_best = true;
    }
  }
  Spectrum baseline(s.grid(), std::move(best.baseline));
  Spectrum corrected = s - baseline;
  return {std::move(baseline), std::move(corrected), best.order, best.iterations};
}

}  // namespace ramanforge
