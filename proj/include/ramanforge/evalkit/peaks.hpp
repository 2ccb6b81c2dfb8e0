#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ramanforge/core.hpp"

namespace ramanforge {

struct DetectedPeak {
  std::size_t index = 0;
  double amplitude = 0.0;
  double prominence = 0.0;
};

/// Topographic prominence of the sample at `i`: its height above the higher
/// of the two lowest points reached walking left and right until terrain
/// strictly higher than the peak (or an edge).
double peak_prominence(std::span<const double> y, std::size_t i);

/// Strict interior local maxima (y[i-1] < y[i] > y[i+1]) whose prominence is
/// at least `min_prominence`.
std::vector<DetectedPeak> detect_peaks(std::span<const double> y, double min_prominence);

/// A peak located on the wavenumber axis.
struct PeakPoint {
  double position = 0.0;  ///< cm^-1
  double amplitude = 0.0;
};

std::vector<PeakPoint> peak_points(const Spectrum& s, std::span<const DetectedPeak> peaks);

/// Default matching tolerance in cm^-1.
inline constexpr double kPeakMatchTolerance = 6.0;

/// Missing/artifact ratios and matched-peak error statistics for one spectrum.
///
/// When n_true is zero the ratios are undefined: ratios_defined is false,
/// missing_ratio is 0 and artifact_ratio is +inf (or 0 with no predictions).
/// When n_match is zero, value_bias and shift_mean are 0 and
/// matches_defined is false.
struct PeakMatchReport {
  double missing_ratio = 0.0;
  double artifact_ratio = 0.0;
  double value_bias = 0.0;
  double shift_mean = 0.0;
  std::size_t n_true = 0;
  std::size_t n_pred = 0;
  std::size_t n_match = 0;
  std::size_t n_miss = 0;
  std::size_t n_artifact = 0;
  bool ratios_defined = true;
  bool matches_defined = true;
};

/// One-to-one matching: candidate pairs within `tol_wn` are taken greedily in
/// order of increasing distance, each peak used at most once.
PeakMatchReport match_peaks(std::span<const PeakPoint> true_peaks,
                            std::span<const PeakPoint> pred_peaks,
                            double tol_wn = kPeakMatchTolerance);

}  // namespace ramanforge
