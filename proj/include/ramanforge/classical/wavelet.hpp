#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramanforge/core.hpp"

namespace ramanforge {

enum class ThresholdRule { kSoft, kHard };

struct WaveletConfig {
  std::string family = "db4";
  int levels = 4;
  ThresholdRule rule = ThresholdRule::kSoft;
  /// Multiplier on the universal threshold; 0 disables thresholding.
  double threshold_scale = 1.0;
};

/// Orthonormal scaling filter (sum = sqrt(2), unit energy). The wavelet
/// filter is the alternating flip of it.
struct WaveletFilter {
  std::string name;
  std::vector<double> lowpass;

  std::vector<double> highpass() const;
};

/// Known families: "haar", "db2", "db4". Throws ValidationError otherwise.
const WaveletFilter& wavelet_filter(std::string_view family);

struct WaveletCoeffs {
  std::vector<double> approx;
  /// details[0] is the finest level.
  std::vector<std::vector<double>> details;
};

/// Periodized multi-level DWT; the input length must be divisible by 2^levels.
WaveletCoeffs dwt(std::span<const double> x, const WaveletFilter& filter, int levels);
std::vector<double> idwt(const WaveletCoeffs& coeffs, const WaveletFilter& filter);

/// Half-sample symmetric extension to `target` points; `offset` receives the
/// index of the first original sample in the padded array.
std::vector<double> symmetric_pad(std::span<const double> x, std::size_t target,
                                  std::size_t& offset);

/// Smallest power of two >= n.
std::size_t dyadic_length(std::size_t n);

/// median(|finest details|) / 0.6745 * sqrt(2 ln n)
double universal_threshold(const WaveletCoeffs& coeffs, std::size_t n);

double soft_threshold(double d, double tau);
double hard_threshold(double d, double tau);

/// Pads, decomposes, thresholds all detail levels, reconstructs and crops.
/// Throws ValidationError for an unknown family or an invalid level count.
std::vector<double> wavelet_denoise(std::span<const double> y, const WaveletConfig& cfg);
Spectrum wavelet_denoise(const Spectrum& s, const WaveletConfig& cfg);

}  // namespace ramanforge
