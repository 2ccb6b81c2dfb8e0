#include "ramanforge/classical/wavelet.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ramanforge/errors.hpp"

namespace ramanforge {

namespace {

const std::array<WaveletFilter, 3>& filters() {
  static const std::array<WaveletFilter, 3> table{{
      {"haar", {0.70710678118654752440, 0.70710678118654752440}},
      {"db2",
       {0.48296291314453414337, 0.83651630373780790557, 0.22414386804201338103,
        -0.12940952255126038117}},
      {"db4",
       {0.23037781330889650086, 0.71484657055291564709, 0.63088076792985890788,
        -0.02798376941685985421, -0.18703481171909308408, 0.03084138183556076363,
        0.03288301166688519974, -0.01059740178506903210}},
  }};
  return table;
}

// One periodized analysis step; x.size() must be even.
void analyze(std::span<const double> x, const std::vector<double>& lo,
             const std::vector<double>& hi, std::vector<double>& approx,
             std::vector<double>& detail) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  approx.assign(half, 0.0);
  detail.assign(half, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t j = 0; j < lo.size(); ++j) {
      const double v = x[(2 * k + j) % n];
      a += lo[j] * v;
      d += hi[j] * v;
    }
    approx[k] = a;
    detail[k] = d;
  }
}

// Adjoint of analyze(); exact inverse because the periodized operator is orthogonal.
std::vector<double> synthesize(const std::vector<double>& approx,
                               const std::vector<double>& detail,
                               const std::vector<double>& lo, const std::vector<double>& hi) {
  const std::size_t half = approx.size();
  const std::size_t n = 2 * half;
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t j = 0; j < lo.size(); ++j) {
      x[(2 * k + j) % n] += lo[j] * approx[k] + hi[j] * detail[k];
    }
  }
  return x;
}

int floor_log2(std::size_t n) {
  int l = 0;
  while ((std::size_t{1} << (l + 1)) <= n) ++l;
  return l;
}

}  // namespace

std::vector<double> WaveletFilter::highpass() const {
  const std::size_t len = lowpass.size();
  std::vector<double> hi(len);
  for (std::size_t k = 0; k < len; ++k) {
    hi[k] = (k % 2 == 0 ? 1.0 : -1.0) * lowpass[len - 1 - k];
  }
  return hi;
}

const WaveletFilter& wavelet_filter(std::string_view family) {
  for (const auto& f : filters()) {
    if (f.name == family) return f;
  }
  throw ValidationError("unknown wavelet family '" + std::string(family) + "'");
}

WaveletCoeffs dwt(std::span<const double> x, const WaveletFilter& filter, int levels) {
  if (levels < 1) throw ValidationError("invalid wavelet level count: must be >= 1");
  if (levels > 62 || x.size() % (std::size_t{1} << levels) != 0 || x.empty()) {
    throw ValidationError("invalid wavelet level count: length " + std::to_string(x.size()) +
                          " is not divisible by 2^" + std::to_string(levels));
  }
  const auto hi = filter.highpass();
  WaveletCoeffs out;
  std::vector<double> current(x.begin(), x.end());
  for (int level = 0; level < levels; ++level) {
    std::vector<double> approx;
    std::vector<double> detail;
    analyze(current, filter.lowpass, hi, approx, detail);
    out.details.push_back(std::move(detail));
    current = std::move(approx);
  }
  out.approx = std::move(current);
  return out;
}

std::vector<double> idwt(const WaveletCoeffs& coeffs, const WaveletFilter& filter) {
  const auto hi = filter.highpass();
  std::vector<double> current = coeffs.approx;
  for (auto it = coeffs.details.rbegin(); it != coeffs.details.rend(); ++it) {
    if (it->size() != current.size()) throw ValidationError("inconsistent wavelet coefficients");
    current = synthesize(current, *it, filter.lowpass, hi);
  }
  return current;
}

std::size_t dyadic_length(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> symmetric_pad(std::span<const double> x, std::size_t target,
                                  std::size_t& offset) {
  const std::size_t n = x.size();
  if (target < n || n == 0) throw ValidationError("padding target shorter than the signal");
  offset = (target - n) / 2;
  std::vector<double> out(target);
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  for (std::size_t i = 0; i < target; ++i) {
    // Reflect into [0, n) with the edge sample repeated (half-sample symmetry).
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(offset);
    j = ((j % period) + period) % period;
    if (j >= static_cast<std::ptrdiff_t>(n)) j = period - 1 - j;
    out[i] = x[static_cast<std::size_t>(j)];
  }
  return out;
}

double universal_threshold(const WaveletCoeffs& coeffs, std::size_t n) {
  if (coeffs.details.empty() || coeffs.details.front().empty()) return 0.0;
  std::vector<double> mags;
  mags.reserve(coeffs.details.front().size());
  for (double d : coeffs.details.front()) mags.push_back(std::abs(d));
  const std::size_t mid = mags.size() / 2;
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid), mags.end());
  double median = mags[mid];
  if (mags.size() % 2 == 0) {
    const double lower = *std::max_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  const double sigma = median / 0.6745;
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

double soft_threshold(double d, double tau) {
  const double mag = std::abs(d) - tau;
  return mag > 0.0 ? std::copysign(mag, d) : 0.0;
}

double hard_threshold(double d, double tau) { return std::abs(d) > tau ? d : 0.0; }

std::vector<double> wavelet_denoise(std::span<const double> y, const WaveletConfig& cfg) {
  const WaveletFilter& filter = wavelet_filter(cfg.family);
  if (y.empty()) throw ValidationError("cannot denoise an empty signal");
  const std::size_t padded_len = dyadic_length(y.size());
  if (cfg.levels < 1 || cfg.levels > floor_log2(padded_len)) {
    throw ValidationError("invalid wavelet level count " + std::to_string(cfg.levels) +
                          " for padded length " + std::to_string(padded_len));
  }
  if (!(cfg.threshold_scale >= 0.0)) throw ValidationError("threshold scale must be >= 0");

  std::size_t offset = 0;
  const auto padded = symmetric_pad(y, padded_len, offset);
  WaveletCoeffs coeffs = dwt(padded, filter, cfg.levels);

  if (cfg.threshold_scale > 0.0) {
    const double tau = cfg.threshold_scale * universal_threshold(coeffs, padded_len);
    for (auto& level : coeffs.details) {
      for (double& d : level) {
        d = cfg.rule == ThresholdRule::kSoft ? soft_threshold(d, tau) : hard_threshold(d, tau);
      }
    }
  }

  const auto rec = idwt(coeffs, filter);
  return {rec.begin() + static_cast<std::ptrdiff_t>(offset),
          rec.begin() + static_cast<std::ptrdiff_t>(offset + y.size())};
}

Spectrum wavelet_denoise(const Spectrum& s, const WaveletConfig& cfg) {
  return Spectrum(s.grid(), wavelet_denoise(s.values(), cfg));
}

}  // namespace ramanforge
