#include "ramanforge/evalkit/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "ramanforge/errors.hpp"

namespace ramanforge {

double peak_prominence(std::span<const double> y, std::size_t i) {
  const double h = y[i];
  double left_min = h;
  for (std::size_t j = i; j-- > 0;) {
    if (y[j] > h) break;
    left_min = std::min(left_min, y[j]);
  }
  double right_min = h;
  for (std::size_t j = i + 1; j < y.size(); ++j) {
    if (y[j] > h) break;
    right_min = std::min(right_min, y[j]);
  }
  return h - std::max(left_min, right_min);
}

std::vector<DetectedPeak> detect_peaks(std::span<const double> y, double min_prominence) {
  if (!(min_prominence >= 0.0)) throw ValidationError("prominence must be >= 0");
  std::vector<DetectedPeak> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i - 1] < y[i] && y[i] > y[i + 1])) continue;
    const double prom = peak_prominence(y, i);
    if (prom >= min_prominence) peaks.push_back({i, y[i], prom});
  }
  return peaks;
}

std::vector<PeakPoint> peak_points(const Spectrum& s, std::span<const DetectedPeak> peaks) {
  std::vector<PeakPoint> out;
  out.reserve(peaks.size());
  for (const auto& p : peaks) out.push_back({s.grid().at(p.index), p.amplitude});
  return out;
}

PeakMatchReport match_peaks(std::span<const PeakPoint> true_peaks,
                            std::span<const PeakPoint> pred_peaks, double tol_wn) {
  struct Candidate {
    double distance;
    std::size_t t;
    std::size_t p;
  };
  std::vector<Candidate> candidates;
  for (std::size_t t = 0; t < true_peaks.size(); ++t) {
    for (std::size_t p = 0; p < pred_peaks.size(); ++p) {
      const double d = std::abs(pred_peaks[p].position - true_peaks[t].position);
      if (d <= tol_wn) candidates.push_back({d, t, p});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.distance, a.t, a.p) < std::tie(b.distance, b.t, b.p);
  });

  std::vector<bool> used_true(true_peaks.size(), false);
  std::vector<bool> used_pred(pred_peaks.size(), false);
  PeakMatchReport r;
  double bias_sum = 0.0;
  double shift_sum = 0.0;
  for (const auto& c : candidates) {
    if (used_true[c.t] || used_pred[c.p]) continue;
    used_true[c.t] = used_pred[c.p] = true;
    ++r.n_match;
    bias_sum += std::abs(pred_peaks[c.p].amplitude - true_peaks[c.t].amplitude);
    shift_sum += c.distance;
  }

  r.n_true = true_peaks.size();
  r.n_pred = pred_peaks.size();
  r.n_miss = r.n_true - r.n_match;
  r.n_artifact = r.n_pred - r.n_match;
  if (r.n_true > 0) {
    r.missing_ratio = static_cast<double>(r.n_miss) / static_cast<double>(r.n_true);
    r.artifact_ratio = static_cast<double>(r.n_artifact) / static_cast<double>(r.n_true);
  } else {
    r.ratios_defined = false;
    r.missing_ratio = 0.0;
    r.artifact_ratio = r.n_artifact > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  if (r.n_match > 0) {
    r.value_bias = bias_sum / static_cast<double>(r.n_match);
    r.shift_mean = shift_sum / static_cast<double>(r.n_match);
  } else {
    r.matches_defined = false;
  }
  return r;
}

}  // namespace ramanforge
