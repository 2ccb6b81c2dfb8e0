#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ramanforge/core.hpp"

namespace ramanforge {

/// Savitzky-Golay smoother: least-squares polynomial of `degree` over a
/// window of 2 * half_window + 1 points.
struct SGConfig {
  int half_window = 5;
  int degree = 2;

  int window() const { return 2 * half_window + 1; }
  /// Throws ValidationError unless 0 <= degree < window <= length.
  void validate(std::size_t length) const;
};

/// Weights c_{-m..m} such that sum_i c_i y(x0 + i) is the fitted polynomial
/// evaluated at x0 + eval_offset (|eval_offset| <= half_window).
/// eval_offset = 0 gives the usual central smoothing coefficients.
std::vector<double> sg_coefficients(int half_window, int degree, int eval_offset = 0);

/// Smooths a raw array. Points within half_window of an edge take the
/// polynomial fitted to the first (or last) full window, evaluated at their
/// own position, so the output keeps the input length.
std::vector<double> sg_filter(std::span<const double> y, const SGConfig& cfg);
Spectrum sg_filter(const Spectrum& s, const SGConfig& cfg);

}  // namespace ramanforge
