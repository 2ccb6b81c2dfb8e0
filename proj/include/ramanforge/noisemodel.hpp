#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ramanforge/core.hpp"
#include "ramanforge/rng.hpp"

namespace ramanforge {

/// Wavenumber-dependent system response g. Construction does not check
/// positivity; calibrate() rejects non-positive gains.
struct GainCurve {
  SpectrumGrid grid;
  std::vector<double> gain;
};

/// Per-wavenumber statistics of calibrated dark frames for one integration
/// time. `mean` estimates the component fluorescence, dark current and offset
/// level; `variance` is the dark noise variance S_dark.
struct DarkStats {
  SpectrumGrid grid;
  std::vector<double> mean;
  std::vector<double> variance;
  double integration_time = 0.0;
  std::size_t n_frames = 0;

  /// Throws ValidationError on size mismatch, negative or non-finite
  /// variance, or fewer than two frames.
  void validate() const;
};

/// Noise-free sample signal: Raman plus sample fluorescence.
struct CleanSignal {
  Spectrum raman;
  Spectrum fluorescence;
};

enum class NoiseMode {
  /// Every point from N(S_sample, S_sample + 2 S_dark).
  kGaussian,
  /// Poisson photoelectrons below an expected count of 30, Gaussian above,
  /// plus Gaussian dark-difference noise N(0, 2 S_dark).
  kExact,
};

/// Expected count below which the exact mode draws Poisson photoelectrons.
inline constexpr double kPoissonGaussianThreshold = 30.0;

/// g = measured / true radiance. Zero measured points give zero gain.
GainCurve estimate_gain(const Spectrum& measured_ref, const Spectrum& true_radiance);

/// Divides raw counts by the gain.
Spectrum calibrate(const Spectrum& raw, const GainCurve& gain);

/// Sample mean and unbiased (n-1) sample variance at each wavenumber.
DarkStats estimate_dark_stats(std::span<const Spectrum> frames, double integration_time);

/// Draws a noisy dark-subtracted spectrum around S_sample = raman + fluorescence.
Spectrum sample_noisy_spectrum(const CleanSignal& clean, const DarkStats& dark,
                               RngStream& stream, NoiseMode mode = NoiseMode::kGaussian);

/// Same as above with S_sample given directly.
Spectrum sample_noisy_spectrum(const Spectrum& s_sample, const DarkStats& dark,
                               RngStream& stream, NoiseMode mode = NoiseMode::kGaussian);

/// calibrated - dark.mean
Spectrum subtract_dark(const Spectrum& calibrated, const DarkStats& dark);

/// Picks one of several dark sets uniformly. Throws ValidationError when empty.
std::size_t select_dark(std::span<const DarkStats> dark_sets, RngStream& stream);

}  // namespace ramanforge
