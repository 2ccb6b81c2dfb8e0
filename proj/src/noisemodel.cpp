#include "ramanforge/noisemodel.hpp"

#include <cmath>
#include <string>

#include "ramanforge/errors.hpp"

namespace ramanforge {

void DarkStats::validate() const {
  if (mean.size() != grid.size() || variance.size() != grid.size()) {
    throw ValidationError("dark stats arrays do not match grid size " +
                          std::to_string(grid.size()));
  }
  if (n_frames < 2) throw ValidationError("dark stats built from fewer than 2 frames");
  for (std::size_t i = 0; i < variance.size(); ++i) {
    if (!(variance[i] >= 0.0) || !std::isfinite(variance[i])) {
      throw ValidationError("negative variance in dark stats at index " + std::to_string(i));
    }
    if (!std::isfinite(mean[i])) {
      throw ValidationError("non-finite mean in dark stats at index " + std::to_string(i));
    }
  }
}

GainCurve estimate_gain(const Spectrum& measured_ref, const Spectrum& true_radiance) {
  require_same_grid(measured_ref.grid(), true_radiance.grid(), "reference vs true radiance");
  GainCurve curve{measured_ref.grid(), std::vector<double>(measured_ref.size())};
  for (std::size_t i = 0; i < measured_ref.size(); ++i) {
    if (!(true_radiance[i] > 0.0)) {
      throw ValidationError("true radiance must be positive (index " + std::to_string(i) + ")");
    }
    curve.gain[i] = measured_ref[i] / true_radiance[i];
  }
  return curve;
}

Spectrum calibrate(const Spectrum& raw, const GainCurve& gain) {
  require_same_grid(raw.grid(), gain.grid, "raw spectrum vs gain curve");
  if (gain.gain.size() != raw.size()) throw ValidationError("gain curve length mismatch");
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(gain.gain[i] > 0.0)) {
      throw ValidationError("non-positive gain at index " + std::to_string(i));
    }
    out[i] = raw[i] / gain.gain[i];
  }
  return Spectrum(raw.grid(), std::move(out));
}

DarkStats estimate_dark_stats(std::span<const Spectrum> frames, double integration_time) {
  if (frames.size() < 2) throw ValidationError("insufficient frames: need at least 2");
  const SpectrumGrid& grid = frames.front().grid();
  for (const auto& f : frames) require_same_grid(grid, f.grid(), "dark frames");

  const std::size_t n = grid.size();
  const double count = static_cast<double>(frames.size());
  DarkStats stats{grid, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                  integration_time, frames.size()};
  for (const auto& f : frames)
    for (std::size_t i = 0; i < n; ++i) stats.mean[i] += f[i];
  for (double& m : stats.mean) m /= count;
  // Two-pass variance keeps precision when the offset dominates the spread.
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = f[i] - stats.mean[i];
      stats.variance[i] += d * d;
    }
  }
  for (double& v : stats.variance) v /= (count - 1.0);
  return stats;
}

Spectrum sample_noisy_spectrum(const CleanSignal& clean, const DarkStats& dark,
                               RngStream& stream, NoiseMode mode) {
  return sample_noisy_spectrum(clean.raman + clean.fluorescence, dark, stream, mode);
}

Spectrum sample_noisy_spectrum(const Spectrum& s_sample, const DarkStats& dark,
                               RngStream& stream, NoiseMode mode) {
  require_same_grid(s_sample.grid(), dark.grid, "clean signal vs dark stats");
  if (dark.variance.size() != s_sample.size()) throw ValidationError("dark stats length mismatch");

  std::vector<double> out(s_sample.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double s = s_sample[i];
    const double s_dark = dark.variance[i];
    if (!(s_dark >= 0.0)) {
      throw ValidationError("negative variance in dark stats at index " + std::to_string(i));
    }
    if (s < 0.0) {
      throw ValidationError("clean signal is negative at index " + std::to_string(i));
    }
    if (mode == NoiseMode::kGaussian) {
      out[i] = sample_gaussian(stream, s, s + 2.0 * s_dark);
    } else {
      const double photo = s < kPoissonGaussianThreshold
                               ? static_cast<double>(sample_poisson(stream, s))
                               : sample_gaussian(stream, s, s);
      out[i] = photo + sample_gaussian(stream, 0.0, 2.0 * s_dark);
    }
  }
  return Spectrum(s_sample.grid(), std::move(out));
}

Spectrum subtract_dark(const Spectrum& calibrated, const DarkStats& dark) {
  require_same_grid(calibrated.grid(), dark.grid, "calibrated spectrum vs dark stats");
  return calibrated - Spectrum(dark.grid, dark.mean);
}

std::size_t select_dark(std::span<const DarkStats> dark_sets, RngStream& stream) {
  if (dark_sets.empty()) throw ValidationError("no dark stats supplied");
  if (dark_sets.size() == 1) return 0;
  return static_cast<std::size_t>(
      stream.uniform_int(0, static_cast<std::int64_t>(dark_sets.size()) - 1));
}

}  // namespace ramanforge
