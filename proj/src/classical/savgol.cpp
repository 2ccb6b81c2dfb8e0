#include "ramanforge/classical/savgol.hpp"

#include <Eigen/Dense>
#include <string>

#include "ramanforge/errors.hpp"

namespace ramanforge {

void SGConfig::validate(std::size_t length) const {
  if (half_window < 0 || degree < 0) {
    throw ValidationError("SG half window and degree must be non-negative");
  }
  if (degree >= window()) {
    throw ValidationError("SG degree " + std::to_string(degree) + " needs a window larger than " +
                          std::to_string(window()));
  }
  if (static_cast<std::size_t>(window()) > length) {
    throw ValidationError("SG window too large: " + std::to_string(window()) +
                          " points for a spectrum of length " + std::to_string(length));
  }
}

std::vector<double> sg_coefficients(int half_window, int degree, int eval_offset) {
  SGConfig cfg{half_window, degree};
  cfg.validate(static_cast<std::size_t>(cfg.window()));
  if (eval_offset < -half_window || eval_offset > half_window) {
    throw ValidationError("SG evaluation offset outside the window");
  }

  const int rows = cfg.window();
  const int cols = degree + 1;
  // Abscissa scaled to [-1, 1]; the smoothing weights do not depend on it.
  const double scale = half_window > 0 ? 1.0 / half_window : 1.0;
  Eigen::MatrixXd vander(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const double x = (r - half_window) * scale;
    double p = 1.0;
    for (int c = 0; c < cols; ++c, p *= x) vander(r, c) = p;
  }
  Eigen::VectorXd basis_at(cols);
  {
    const double t = eval_offset * scale;
    double p = 1.0;
    for (int c = 0; c < cols; ++c, p *= t) basis_at(c) = p;
  }

  // c = V (V^T V)^{-1} e(t) = Q R^{-T} e(t) with V = QR.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(vander);
  const Eigen::MatrixXd r_factor =
      qr.matrixQR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  const Eigen::VectorXd z =
      r_factor.transpose().triangularView<Eigen::Lower>().solve(basis_at);
  const Eigen::MatrixXd q_thin = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  const Eigen::VectorXd coeffs = q_thin * z;
  return {coeffs.data(), coeffs.data() + coeffs.size()};
}

std::vector<double> sg_filter(std::span<const double> y, const SGConfig& cfg) {
  cfg.validate(y.size());
  const int m = cfg.half_window;
  const auto n = static_cast<std::ptrdiff_t>(y.size());

  std::vector<std::vector<double>> kernels;
  kernels.reserve(static_cast<std::size_t>(cfg.window()));
  for (int off = -m; off <= m; ++off) kernels.push_back(sg_coefficients(m, cfg.degree, off));
  const auto& central = kernels[static_cast<std::size_t>(m)];

  auto apply = [&](const std::vector<double>& w, std::ptrdiff_t first) {
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * y[static_cast<std::size_t>(first) + k];
    return acc;
  };

  std::vector<double> out(y.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (i < m) {
      out[i] = apply(kernels[static_cast<std::size_t>(i)], 0);
    } else if (i >= n - m) {
      const std::ptrdiff_t off = i - (n - 1 - m);
      out[i] = apply(kernels[static_cast<std::size_t>(m + off)], n - 2 * m - 1);
    } else {
      out[i] = apply(central, i - m);
    }
  }
  return out;
}

Spectrum sg_filter(const Spectrum& s, const SGConfig& cfg) {
  return Spectrum(s.grid(), sg_filter(s.values(), cfg));
}

}  // namespace ramanforge
