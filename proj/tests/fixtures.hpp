#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ramanforge/noisemodel.hpp"
#include "ramanforge/rng.hpp"
#include "ramanforge/synth.hpp"

namespace rftest {

using namespace ramanforge;

inline DarkStats flat_dark(const SpectrumGrid& g, double variance, double mean = 0.0) {
  return DarkStats{g, std::vector<double>(g.size(), mean), std::vector<double>(g.size(), variance),
                   0.1, 1000};
}

/// Cubic baseline plus positive pseudo-Voigt peaks whose heights are a
/// fraction of the baseline range. Points within 3 FWHM of a peak centre are
/// excluded from `peak_free`.
struct BaselineCase {
  Spectrum signal;
  Spectrum baseline;
  std::vector<bool> peak_free;
  double baseline_range = 0.0;
};

inline BaselineCase baseline_case(const SpectrumGrid& g, RngStream& rng, int max_peaks = 1,
                                  double max_height = 0.5) {
  std::vector<double> c(4);
  for (double& a : c) a = rng.uniform(-1.0, 1.0);
  std::vector<double> base(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.normalized(i);
    base[i] = 2.0 + c[0] + x * (c[1] + x * (c[2] + x * c[3]));
  }
  BaselineCase out;
  out.baseline = Spectrum(g, base);
  out.baseline_range = out.baseline.max() - out.baseline.min();
  out.peak_free.assign(g.size(), true);

  Spectrum peaks(g);
  const auto count = rng.uniform_int(1, max_peaks);
  for (std::int64_t k = 0; k < count; ++k) {
    const double center = rng.uniform(g.start() + 50.0, g.end() - 50.0);
    const double fwhm = rng.uniform(10.0, 40.0);
    const double mix = rng.uniform(0.0, 1.0);
    const double height = rng.uniform(0.1, max_height) * out.baseline_range;
    peaks += pseudo_voigt(g, PeakParams::from_fwhm(center, fwhm, mix, 1.0)) * height;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(g.at(i) - center) < 3.0 * fwhm) out.peak_free[i] = false;
    }
  }
  out.signal = out.baseline + peaks;
  return out;
}

}  // namespace rftest
